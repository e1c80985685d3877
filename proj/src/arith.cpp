#include "wallsun/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace wallsun::arith {

namespace {

constexpr std::uint64_t kTrialLimit = 10000;
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool fits_u64(const Big& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t as_u64(const Big& v) {
  // mpz_get_ui is only 64-bit on LP64; go through export to be portable.
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return count == 0 ? 0 : out;
}

Big from_u64(std::uint64_t v) {
  Big out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Brent's variant of Pollard rho. Returns a nontrivial divisor, or 0 if the
// iteration budget ran out.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; budget > 0; ++c) {
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return addmod(mulmod(v, v, n), c % n, n); };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += steps;
        budget = budget > steps ? budget - steps : 0;
      } while (k < r && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

Big rho_big(const Big& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; budget > 0; ++c) {
    Big y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](Big& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t steps = std::min(m, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          f(y);
          diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += steps;
        budget = budget > steps ? budget - steps : 0;
      } while (k < r && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        f(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

void add_prime(std::map<Big, unsigned>& acc, const Big& p, unsigned e = 1) {
  acc[p] += e;
}

// Splits a cofactor with no prime factor below kTrialLimit.
void split(const Big& n, std::map<Big, unsigned>& acc, bool& certified,
           std::uint64_t effort) {
  if (n == 1) return;
  if (fits_u64(n)) {
    const std::uint64_t v = as_u64(n);
    if (is_prime(v)) {
      add_prime(acc, n);
      return;
    }
    std::uint64_t budget = effort;
    const std::uint64_t d = rho_u64(v, budget);
    if (d == 0) {
      throw IncompleteFactorization(n, "factorize: composite cofactor " + n.get_str() +
                                           " resisted Pollard-rho effort bound");
    }
    split(from_u64(d), acc, certified, effort);
    split(from_u64(v / d), acc, certified, effort);
    return;
  }
  const Primality kind = is_prime(n);
  if (kind != Primality::Composite) {
    if (kind == Primality::ProbablePrime) certified = false;
    add_prime(acc, n);
    return;
  }
  std::uint64_t budget = effort;
  const Big d = rho_big(n, budget);
  if (d == 0) {
    throw IncompleteFactorization(n, "factorize: composite cofactor " + n.get_str() +
                                         " resisted Pollard-rho effort bound");
  }
  split(d, acc, certified, effort);
  split(Big(n / d), acc, certified, effort);
}

Factorization from_map(const Big& value, const std::map<Big, unsigned>& acc, bool certified) {
  Factorization out;
  out.value = value;
  out.certified = certified;
  for (const auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

}  // namespace

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Primality is_prime(const Big& n) {
  if (fits_u64(n)) return is_prime(as_u64(n)) ? Primality::Prime : Primality::Composite;
  if (sgn(n) < 0) return Primality::Composite;
  for (std::uint64_t p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::Composite;
  }
  const Big n1 = n - 1;
  Big d = n1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Big x;
  for (std::uint64_t a : kWitnesses) {
    mpz_powm(x.get_mpz_t(), Big(static_cast<unsigned long>(a)).get_mpz_t(), d.get_mpz_t(),
             n.get_mpz_t());
    if (x == 1 || x == n1) continue;
    bool composite = true;
    for (std::size_t i = 1; i < s; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n1) {
        composite = false;
        break;
      }
    }
    if (composite) return Primality::Composite;
  }
  return Primality::ProbablePrime;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

Factorization factorize(const Big& n, std::uint64_t effort) {
  if (n < 1) throw InvalidArgument("factorize: n must be >= 1, got " + n.get_str());
  std::map<Big, unsigned> acc;
  Big rest = n;
  for (std::uint64_t p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (Big(static_cast<unsigned long>(p * p)) > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) add_prime(acc, Big(static_cast<unsigned long>(p)), e);
  }
  bool certified = true;
  split(rest, acc, certified, effort);
  return from_map(n, acc, certified);
}

Factorization factorize(std::uint64_t n, std::uint64_t effort) {
  return factorize(from_u64(n), effort);
}

Big Factorization::recompose() const {
  Big out = 1;
  for (const auto& f : factors) {
    Big pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= pe;
  }
  return out;
}

std::vector<Big> Factorization::primes() const {
  std::vector<Big> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

bool Factorization::divisible_by_square() const {
  return std::any_of(factors.begin(), factors.end(),
                     [](const PrimePower& f) { return f.exponent >= 2; });
}

int jacobi(std::int64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) {
    throw InvalidArgument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
  }
  // Reduce a into [0, n) without overflow.
  std::uint64_t x;
  if (a >= 0) {
    x = static_cast<std::uint64_t>(a) % n;
  } else {
    const std::uint64_t neg = static_cast<std::uint64_t>(-(a + 1)) + 1;
    x = (n - neg % n) % n;
  }
  int t = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) t = -t;
    x %= n;
  }
  return n == 1 ? t : 0;
}

int jacobi(const Big& a, const Big& n) {
  if (sgn(n) <= 0 || mpz_even_p(n.get_mpz_t())) {
    throw InvalidArgument("jacobi: modulus must be odd and positive, got " + n.get_str());
  }
  if (fits_u64(n)) {
    const std::uint64_t m = as_u64(n);
    Big r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    const std::uint64_t x = as_u64(r);
    // x < m; fold into the signed range when needed.
    if (x <= static_cast<std::uint64_t>(INT64_MAX)) return jacobi(static_cast<std::int64_t>(x), m);
    return jacobi(-static_cast<std::int64_t>(m - x), m);
  }
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

std::uint64_t mul_order(std::uint64_t b, std::uint64_t m, const Factorization& order_multiple) {
  if (m < 2) throw InvalidArgument("mul_order: modulus must be >= 2");
  b %= m;
  if (std::gcd(b, m) != 1) {
    throw InvalidArgument("mul_order: base and modulus are not coprime");
  }
  std::uint64_t order = to_u64(order_multiple.value, "mul_order: order multiple");
  if (powmod(b, order, m) != 1) {
    throw InvalidArgument("mul_order: supplied multiple is not a multiple of the order");
  }
  for (const auto& f : order_multiple.factors) {
    const std::uint64_t q = as_u64(f.prime);
    for (unsigned i = 0; i < f.exponent && order % q == 0; ++i) {
      if (powmod(b, order / q, m) != 1) break;
      order /= q;
    }
  }
  return order;
}

std::uint64_t mul_order(const Big& b, std::uint64_t m) {
  if (m < 2) throw InvalidArgument("mul_order: modulus must be >= 2");
  Big r;
  mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), from_u64(m).get_mpz_t());
  const std::uint64_t residue = as_u64(r);
  if (std::gcd(residue, m) != 1) {
    throw InvalidArgument("mul_order: gcd(" + b.get_str() + ", " + std::to_string(m) + ") != 1");
  }
  const std::uint64_t phi = euler_phi(factorize(m));
  return mul_order(residue, m, factorize(phi));
}

bool is_squarefree(const Big& n, std::uint64_t effort) {
  return !factorize(n, effort).divisible_by_square();
}

unsigned valuation(const Big& n, std::uint64_t p) {
  if (n == 0) throw InvalidArgument("valuation: zero has infinite valuation");
  Big rest = abs(n);
  unsigned e = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++e;
  }
  return e;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& pe : f.factors) {
    const std::uint64_t p = to_u64(pe.prime, "euler_phi: prime");
    phi *= p - 1;
    for (unsigned i = 1; i < pe.exponent; ++i) phi *= p;
  }
  return phi;
}

Factorization multiply(const Factorization& x, const Factorization& y) {
  std::map<Big, unsigned> acc;
  for (const auto& f : x.factors) acc[f.prime] += f.exponent;
  for (const auto& f : y.factors) acc[f.prime] += f.exponent;
  return from_map(x.value * y.value, acc, x.certified && y.certified);
}

std::uint64_t to_u64(const Big& v, const char* what) {
  if (!fits_u64(v)) {
    throw InvalidArgument(std::string(what) + ": value " + v.get_str() + " outside [0, 2^64)");
  }
  return as_u64(v);
}

}  // namespace wallsun::arith
