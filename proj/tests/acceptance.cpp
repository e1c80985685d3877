// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "wallsun/mono.hpp"
#include "wallsun/wss.hpp"

using namespace wallsun;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::uint64_t brute_period(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t x = 0, y = 1 % m;
  for (std::uint64_t n = 1;; ++n) {
    const std::uint64_t z = (a % m * y + b % m * x) % m;
    x = y;
    y = z;
    if (x == 0 && y == 1 % m) return n;
  }
}

std::uint64_t brute_u(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t m) {
  std::uint64_t x = 0, y = 1 % m;
  for (std::uint64_t k = 0; k < n; ++k) {
    const std::uint64_t z = (a % m * y + b % m * x) % m;
    x = y;
    y = z;
  }
  return x;
}

std::uint64_t brute_order(std::uint64_t g, std::uint64_t p) {
  std::uint64_t x = g % p;
  for (std::uint64_t k = 1;; ++k) {
    if (x == 1) return k;
    x = x * (g % p) % p;
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome check_table1() {
  using Hits = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  const std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, Hits>> rows = {
      {{2, 1}, {{13, 28}, {31, 30}}}, {{3, 26}, {{71, 126}}},
      {{10, 41}, {{29, 120}}},        {{11, 43}, {{2, 3}, {5, 24}}},
      {{15, 14}, {{29, 28}}},         {{23, 11}, {{2, 3}, {3, 3}, {71, 35}}},
      {{25, 7}, {{5, 8}}},            {{27, 22}, {{13, 84}}},
  };
  Outcome o;
  int matched = 0;
  for (const auto& [ab, expected] : rows) {
    Hits found;
    for (const auto& c : search_wss(LucasParams::make(ab.first, ab.second), 100, 1)) {
      found.emplace_back(c.p, c.pi_p2);
      if (brute_period(ab.first, ab.second, c.p * c.p) != c.pi_p2) o.ok = false;
    }
    if (found == expected) {
      ++matched;
    } else {
      o.ok = false;
    }
  }
  o.detail = fmt("%d/8 rows match", matched);
  return o;
}

Outcome check_counterexample() {
  const auto params = LucasParams::make(5, 2);
  const auto c = is_wss(params, 7);
  const bool lib = c.pi_p == 48 && c.pi_p2 == 336 && !c.is_wss && c.usub_condition &&
                   lucas_u_mod(params, 48, 49) == 0;
  const bool brute = brute_period(5, 2, 7) == 48 && brute_period(5, 2, 49) == 336 &&
                     brute_u(5, 2, 48, 49) == 0;
  return {lib && brute, fmt("pi(7)=%llu pi(49)=%llu is_wss=%d usub=%d",
                            static_cast<unsigned long long>(c.pi_p),
                            static_cast<unsigned long long>(c.pi_p2), c.is_wss, c.usub_condition)};
}

Outcome check_fibonacci() {
  const auto hits = search_wss(LucasParams::make(1, 1), 100000, 1);
  return {hits.empty(), fmt("%zu WSS primes below 10^5", hits.size())};
}

Outcome check_swan() {
  std::size_t n = 0, bad = 0;
  for (std::uint64_t N = 2; N <= 10; ++N) {
    for (std::uint64_t M = 1; M < N; ++M) {
      for (long A = -10; A <= 10; ++A) {
        for (long B = -10; B <= 10; ++B) {
          if (A == 0 || B == 0) continue;
          const auto t = mono::TrinomialSpec::make(N, M, A, B);
          ++n;
          if (mono::swan_discriminant(t).value() != poly::discriminant(t.to_poly())) ++bad;
        }
      }
    }
  }
  return {bad == 0 && n == 45 * 400, fmt("%zu trinomials, %zu mismatches", n, bad)};
}

Outcome check_jks_vs_dedekind() {
  std::mt19937_64 rng(500);
  const auto aux = arith::primes_up_to(300);
  const auto primes = arith::primes_up_to(100);
  std::size_t polys = 0, comparisons = 0, bad = 0;
  std::set<mono::JksCase> cases;
  while (polys < 500) {
    const std::uint64_t N = 2 + rng() % 49;
    const std::uint64_t M = 1 + rng() % (N - 1);
    const long A = static_cast<long>(rng() % 61) - 30;
    const long B = static_cast<long>(rng() % 61) - 30;
    if (A == 0 || B == 0) continue;
    const auto t = mono::TrinomialSpec::make(N, M, A, B);
    const auto T = t.to_poly();
    bool certified = false;
    for (std::uint64_t q : aux) {
      if (poly::is_irreducible(T.reduce(q))) {
        certified = true;
        break;
      }
    }
    if (!certified) continue;
    ++polys;
    const auto swan = mono::swan_discriminant(t);
    for (std::uint64_t p : primes) {
      if (!swan.divisible_by(p)) continue;
      const auto j = mono::jks_prime_check(t, p);
      cases.insert(j.which);
      ++comparisons;
      if (j.index_coprime != mono::dedekind_index_coprime(T, p)) ++bad;
    }
  }
  return {bad == 0, fmt("%zu trinomials, %zu prime checks, %zu JKS cases hit, %zu mismatches",
                        polys, comparisons, cases.size(), bad)};
}

Outcome check_theorem_grid() {
  std::size_t points = 0, bad = 0, non_mono = 0;
  for (std::uint64_t a = 1; a <= 15; ++a) {
    for (std::uint64_t b = 1; b <= 15; ++b) {
      const auto params = LucasParams::make(a, b);
      if (!params.star_valid) continue;
      for (std::uint64_t s : {2u, 3u, 4u, 5u, 7u, 9u, 13u}) {
        if (!mono::theorem_hypotheses(params, s).overall) continue;
        ++points;
        const bool predicted = mono::predict_monogenic(params, s);
        const bool m1 = mono::is_monogenic_Fn(mono::PowerCompositionalSpec::make(params, s, 1)).monogenic;
        const bool m2 = mono::is_monogenic_Fn(mono::PowerCompositionalSpec::make(params, s, 2)).monogenic;
        if (predicted != m1 || predicted != m2) ++bad;
        non_mono += !predicted;
      }
    }
  }
  return {bad == 0 && points > 0,
          fmt("%zu grid points (%zu non-monogenic), %zu disagreements", points, non_mono, bad)};
}

Outcome check_lemma_main1() {
  std::mt19937_64 rng(30);
  std::vector<LucasParams> pairs;
  for (auto [a, b] : {std::pair{2, 1}, {3, 26}, {15, 14}, {27, 22}}) {
    const auto p = LucasParams::make(a, b);
    if (p.star_valid) pairs.push_back(p);
  }
  while (pairs.size() < 40) {
    const auto p = LucasParams::make(1 + rng() % 100, 1 + rng() % 100);
    if (p.star_valid) pairs.push_back(p);
  }
  std::size_t checks = 0, wss = 0, bad = 0;
  for (const auto& params : pairs) {
    for (std::uint64_t p : arith::primes_up_to(200)) {
      if (p < 3 || params.b_mod(p) == 0 || delta(params, p) != -1) continue;
      const bool w = is_wss(params, p).is_wss;
      if (mono::lemma_main2_check(params, p, 1) != w || mono::lemma_main2_check(params, p, 2) != w) {
        ++bad;
      }
      wss += w;
      ++checks;
    }
  }
  return {bad == 0 && pairs.size() >= 30,
          fmt("%zu pairs, %zu (pair, p) checks, %zu WSS, %zu mismatches", pairs.size(), checks,
              wss, bad)};
}

Outcome check_theorem_period() {
  // (a mod 4, b mod 4) -> (pi(2), pi(4))
  const std::map<std::pair<int, int>, std::pair<std::uint64_t, std::uint64_t>> two = {
      {{2, 1}, {2, 4}}, {{2, 3}, {2, 4}}, {{1, 1}, {3, 6}},
      {{1, 3}, {3, 6}}, {{3, 1}, {3, 6}}, {{3, 3}, {3, 3}},
  };
  std::size_t checks = 0, bad = 0;
  const auto primes = arith::primes_up_to(100);
  for (std::uint64_t a = 1; a <= 30; ++a) {
    for (std::uint64_t b = 1; b <= 30; ++b) {
      const auto params = LucasParams::make(a, b);
      for (std::uint64_t p : primes) {
        if (b % p == 0) continue;
        const std::uint64_t pi = period_prime(params, p).pi;
        // item 1
        if ((pi == 2) != (a % p == 0 && b % p == 1)) ++bad;
        if (p == 2) {
          // item 2
          if (a % 4 != 0) {
            const auto want = two.at({static_cast<int>(a % 4), static_cast<int>(b % 4)});
            if (pi != want.first || period_prime_squared(params, 2).pi != want.second) ++bad;
            if (brute_period(a, b, 2) != want.first || brute_period(a, b, 4) != want.second) ++bad;
          }
        } else {
          // item 3
          const std::uint64_t pi2 = period_prime_squared(params, p).pi;
          if (pi2 != pi && pi2 != p * pi) ++bad;
          // item 4
          if (delta(params, p) == -1) {
            const std::uint64_t lambda = brute_order(b * b % p, p);
            if ((2 * (p + 1) * lambda) % pi != 0) ++bad;
          }
        }
        ++checks;
      }
    }
  }
  return {bad == 0, fmt("%zu (a, b, p) cases, %zu violations", checks, bad)};
}

Outcome check_lemma_basic1() {
  std::mt19937_64 rng(9);
  std::size_t count = 0, bad = 0;
  while (count < 100) {
    const auto params = LucasParams::make(1 + rng() % 10000, 1 + rng() % 10000);
    if (!params.star_valid) continue;
    ++count;
    const auto report = mono::is_monogenic_Fn(mono::PowerCompositionalSpec::make(params, 1, 1));
    const poly::IntPoly f({-params.b, -params.a, Big(1)});
    bool dedekind = true;
    for (const auto& pe : arith::factorize(Big(params.a * params.a + 4 * params.b)).factors) {
      dedekind = dedekind && mono::dedekind_index_coprime(f, arith::to_u64(pe.prime, "p"));
    }
    if (!report.monogenic || !dedekind) ++bad;
  }
  return {bad == 0, fmt("%zu quadratics, %zu not monogenic", count, bad)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "published WSS table reproduced", 5, check_table1},
      {2, "(5,2) at p=7 satisfies the U-condition but is not WSS", 1, check_counterexample},
      {3, "no Fibonacci WSS prime below 10^5", 60, check_fibonacci},
      {4, "Swan's formula equals the resultant discriminant", 60, check_swan},
      {5, "JKS verdicts equal Dedekind verdicts", 120, check_jks_vs_dedekind},
      {6, "monogenicity prediction equals direct verdicts for n = 1, 2", 600, check_theorem_grid},
      {7, "WSS iff f(alpha^{p^m}) = 0 mod p^2 for delta = -1", 60, check_lemma_main1},
      {8, "period theorem items 1-4", 30, check_theorem_period},
      {9, "x^2 - a x - b is monogenic under the standing conditions", 10, check_lemma_basic1},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = s < c.limit_s;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s  criterion %d: %s -- %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), s, c.limit_s, in_time ? "" : " TOO SLOW");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
