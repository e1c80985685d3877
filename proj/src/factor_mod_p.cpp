// gcd, modular powering and factorization of polynomials over F_p.

#include <algorithm>
#include <random>

#include "wallsun/poly.hpp"

namespace wallsun::poly {

namespace {

// Fixed seed so equal-degree splitting is reproducible run to run.
constexpr std::uint64_t kSplitSeed = 0x5eed'ca47'0f2a'1ULL;

bool factor_less(const ModFactor& x, const ModFactor& y) {
  if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
  const auto& a = x.factor.coeffs();
  const auto& b = y.factor.coeffs();
  if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  }
  return x.multiplicity < y.multiplicity;
}

// g with g(x)^p = f(x); f' must be zero.
ModPoly pth_root(const ModPoly& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> out(static_cast<std::size_t>(f.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out[i / p] = f.coeffs()[i];
  // Coefficients of F_p are fixed by Frobenius.
  return ModPoly(p, std::move(out));
}

// Monic squarefree f = prod of (factor, multiplicity); factors pairwise coprime.
void squarefree(const ModPoly& f, unsigned scale, std::vector<ModFactor>& out) {
  if (f.degree() <= 0) return;
  const ModPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f), scale * static_cast<unsigned>(f.modulus()), out);
    return;
  }
  ModPoly c = mod_gcd(f, d);
  ModPoly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    const ModPoly y = mod_gcd(w, c);
    const ModPoly part = w / y;
    if (part.degree() > 0) out.push_back({part.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    squarefree(pth_root(c), scale * static_cast<unsigned>(f.modulus()), out);
  }
}

// Squarefree monic f -> (product of all irreducible factors of degree d, d).
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x = ModPoly::x(p);
  ModPoly h = x % f;
  const Big pb(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, pb, f);
    const ModPoly g = mod_gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Cantor-Zassenhaus: f squarefree monic, all irreducible factors of degree d.
void equal_degree(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const std::uint64_t p = f.modulus();
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  Big half_exp;
  if (p != 2) {
    Big q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
    half_exp = (q - 1) / 2;
  }
  for (;;) {
    std::vector<std::uint64_t> rc(static_cast<std::size_t>(f.degree()));
    for (auto& c : rc) c = coef(rng);
    const ModPoly a(p, std::move(rc));
    if (a.degree() <= 0) continue;
    ModPoly b(p);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^{2^{d-1}}.
      ModPoly t = a % f;
      b = t;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % f;
        b += t;
      }
    } else {
      b = powmod(a, half_exp, f) - ModPoly::one(p);
    }
    const ModPoly g = mod_gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

ModPoly powmod(const ModPoly& base, const Big& k, const ModPoly& m) {
  if (sgn(k) < 0) throw InvalidArgument("powmod: negative exponent");
  ModPoly acc = ModPoly::one(base.modulus()) % m;
  const ModPoly b = base % m;
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = (acc * acc) % m;
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = (acc * b) % m;
  }
  return acc;
}

ModPoly pow(const ModPoly& base, std::uint64_t k) {
  ModPoly acc = ModPoly::one(base.modulus());
  ModPoly sq = base;
  while (k > 0) {
    if (k & 1) acc = acc * sq;
    k >>= 1;
    if (k > 0) sq = sq * sq;
  }
  return acc;
}

ModPoly mod_gcd(const ModPoly& f, const ModPoly& g) {
  if (f.modulus() != g.modulus()) {
    throw InvalidArgument("mod_gcd: modulus mismatch");
  }
  ModPoly a = f, b = g;
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ModPoly ModFactorization::expand(std::uint64_t p) const {
  ModPoly out = ModPoly::one(p) * unit;
  for (const auto& f : factors) out = out * pow(f.factor, f.multiplicity);
  return out;
}

ModFactorization factor_mod_p(const ModPoly& f) {
  if (f.is_zero()) throw InvalidArgument("factor_mod_p: zero polynomial");
  ModFactorization out;
  out.unit = f.lc();
  std::vector<ModFactor> sqf;
  squarefree(f.monic(), 1, sqf);

  std::mt19937_64 rng(kSplitSeed);
  for (const auto& part : sqf) {
    for (const auto& [block, d] : distinct_degree(part.factor)) {
      std::vector<ModPoly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& g : irreducibles) out.factors.push_back({g.monic(), part.multiplicity});
    }
  }
  // Merge equal factors (possible when pth-root recursion revisits a factor).
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  std::vector<ModFactor> merged;
  for (auto& fac : out.factors) {
    if (!merged.empty() && merged.back().factor == fac.factor) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(std::move(fac));
    }
  }
  out.factors = std::move(merged);
  return out;
}

bool is_irreducible(const ModPoly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const std::uint64_t p = f.modulus();
  const ModPoly g = f.monic();
  const ModPoly x = ModPoly::x(p);
  auto frobenius_power = [&](int k) {
    Big e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(k));
    return powmod(x, e, g);
  };
  if (frobenius_power(n) != x % g) return false;
  for (const auto& q : arith::factorize(static_cast<std::uint64_t>(n)).factors) {
    const int k = n / static_cast<int>(arith::to_u64(q.prime, "is_irreducible"));
    if (!mod_gcd(g, frobenius_power(k) - x).is_one()) return false;
  }
  return true;
}

}  // namespace wallsun::poly
