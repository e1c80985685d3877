#include "wallsun/lucas.hpp"

#include <numeric>
#include <string>

namespace wallsun {

namespace {

std::uint64_t residue(const Big& v, std::uint64_t m) {
  Big r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), Big(static_cast<unsigned long>(m)).get_mpz_t());
  return arith::to_u64(r, "residue");
}

void require_prime(std::uint64_t p, const char* where) {
  if (!arith::is_prime(p)) {
    throw InvalidArgument(std::string(where) + ": " + std::to_string(p) + " is not prime");
  }
}

void require_unit_b(const LucasParams& params, std::uint64_t m, const char* where) {
  if (std::gcd(params.b_mod(m), m) != 1) {
    throw InvalidArgument(std::string(where) + ": gcd(b, " + std::to_string(m) +
                          ") != 1, period undefined");
  }
}

// pi(2), pi(4) by direct enumeration; the mod-4 class decides both.
PeriodResult small_power_of_two(const LucasParams& params, std::uint64_t m) {
  PeriodResult r = period(params, m);
  r.method = PeriodMethod::DirectMod2Table;
  return r;
}

}  // namespace

LucasParams LucasParams::make(const Big& a, const Big& b) {
  if (a < 1 || b < 1) {
    throw InvalidArgument("LucasParams: a and b must be positive integers (a=" + a.get_str() +
                          ", b=" + b.get_str() + ")");
  }
  LucasParams out;
  out.a = a;
  out.b = b;
  if (mpz_odd_p(a.get_mpz_t())) {
    out.dtilde = a * a + 4 * b;
  } else {
    const Big half = a / 2;
    out.dtilde = half * half + b;
  }
  out.star_valid = !mpz_divisible_ui_p(a.get_mpz_t(), 4) && arith::is_squarefree(b) &&
                   arith::is_squarefree(out.dtilde);
  return out;
}

std::uint64_t LucasParams::a_mod(std::uint64_t m) const { return residue(a, m); }
std::uint64_t LucasParams::b_mod(std::uint64_t m) const { return residue(b, m); }

std::string_view to_string(PeriodMethod m) {
  switch (m) {
    case PeriodMethod::BruteIteration: return "BruteIteration";
    case PeriodMethod::MatrixOrder: return "MatrixOrder";
    case PeriodMethod::LiftCheck: return "LiftCheck";
    case PeriodMethod::DirectMod2Table: return "DirectMod2Table";
  }
  return "?";
}

int delta(const LucasParams& params, std::uint64_t p) {
  if (p < 3 || !arith::is_prime(p)) {
    throw InvalidArgument("delta: needs an odd prime, got " + std::to_string(p));
  }
  return arith::jacobi(params.dtilde, Big(static_cast<unsigned long>(p)));
}

PrimeContext PrimeContext::make(const LucasParams& params, std::uint64_t p) {
  PrimeContext ctx;
  ctx.p = p;
  ctx.delta_p = delta(params, p);
  const std::uint64_t b = params.b_mod(p);
  if (b != 0) ctx.lambda = arith::mul_order(Big(static_cast<unsigned long>(arith::mulmod(b, b, p))), p);
  return ctx;
}

namespace lucas {

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t m) {
  using arith::addmod;
  using arith::mulmod;
  const auto& a = x.e;
  const auto& b = y.e;
  return {{addmod(mulmod(a[0], b[0], m), mulmod(a[1], b[2], m), m),
           addmod(mulmod(a[0], b[1], m), mulmod(a[1], b[3], m), m),
           addmod(mulmod(a[2], b[0], m), mulmod(a[3], b[2], m), m),
           addmod(mulmod(a[2], b[1], m), mulmod(a[3], b[3], m), m)}};
}

Mat2 mat_pow(Mat2 base, std::uint64_t k, std::uint64_t m) {
  Mat2 acc = Mat2::identity();
  for (auto& v : acc.e) v %= m;
  while (k > 0) {
    if (k & 1) acc = mat_mul(acc, base, m);
    base = mat_mul(base, base, m);
    k >>= 1;
  }
  return acc;
}

Mat2 mat_pow(Mat2 base, const Big& k, std::uint64_t m) {
  if (sgn(k) < 0) throw InvalidArgument("mat_pow: negative exponent");
  Mat2 acc = Mat2::identity();
  for (auto& v : acc.e) v %= m;
  const auto bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = mat_mul(acc, acc, m);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = mat_mul(acc, base, m);
  }
  return acc;
}

Mat2 companion(const LucasParams& params, std::uint64_t m) {
  return {{0, params.b_mod(m), 1 % m, params.a_mod(m)}};
}

}  // namespace lucas

std::uint64_t lucas_u_mod(const LucasParams& params, const Big& n, std::uint64_t m) {
  if (m < 2) throw InvalidArgument("lucas_u_mod: modulus must be >= 2");
  // C^n = [[b U_{n-1}, b U_n], [U_n, U_{n+1}]]
  return lucas::mat_pow(lucas::companion(params, m), n, m).e[2];
}

std::uint64_t lucas_u_mod(const LucasParams& params, std::uint64_t n, std::uint64_t m) {
  if (m < 2) throw InvalidArgument("lucas_u_mod: modulus must be >= 2");
  return lucas::mat_pow(lucas::companion(params, m), n, m).e[2];
}

PeriodResult period(const LucasParams& params, std::uint64_t m) {
  if (m < 2) throw InvalidArgument("period: modulus must be >= 2");
  require_unit_b(params, m, "period");
  const std::uint64_t a = params.a_mod(m);
  const std::uint64_t b = params.b_mod(m);
  std::uint64_t prev = 0, cur = 1 % m;
  std::uint64_t n = 0;
  if (m < (std::uint64_t{1} << 31)) {
    // a*cur + b*prev < 2^63: no 128-bit products needed.
    do {
      const std::uint64_t next = (a * cur + b * prev) % m;
      prev = cur;
      cur = next;
      ++n;
    } while (!(prev == 0 && cur == 1));
    return {m, n, PeriodMethod::BruteIteration};
  }
  do {
    const std::uint64_t next =
        arith::addmod(arith::mulmod(a, cur, m), arith::mulmod(b, prev, m), m);
    prev = cur;
    cur = next;
    ++n;
  } while (!(prev == 0 && cur == 1));
  return {m, n, PeriodMethod::BruteIteration};
}

PeriodResult period_prime(const LucasParams& params, std::uint64_t p) {
  require_prime(p, "period_prime");
  require_unit_b(params, p, "period_prime");
  if (p == 2) return small_power_of_two(params, 2);
  if (p > (std::uint64_t{1} << 32)) {
    throw InvalidArgument("period_prime: p must be below 2^32");
  }
  const int d = delta(params, p);
  arith::Factorization multiple;
  switch (d) {
    case 1: multiple = arith::factorize(p - 1); break;
    case -1: multiple = arith::multiply(arith::factorize(p - 1), arith::factorize(p + 1)); break;
    default: multiple = arith::multiply(arith::factorize(p), arith::factorize(p - 1)); break;
  }
  const lucas::Mat2 c = lucas::companion(params, p);
  std::uint64_t order = arith::to_u64(multiple.value, "period_prime: group exponent");
  if (!lucas::mat_pow(c, order, p).is_identity()) {
    throw InternalInconsistency("period_prime: C^M0 != I for p=" + std::to_string(p));
  }
  for (const auto& f : multiple.factors) {
    const std::uint64_t q = arith::to_u64(f.prime, "period_prime: factor");
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (!lucas::mat_pow(c, order / q, p).is_identity()) break;
      order /= q;
    }
  }
  return {p, order, PeriodMethod::MatrixOrder};
}

PeriodResult period_prime_squared(const LucasParams& params, std::uint64_t p,
                                  const PeriodResult& pi_p) {
  require_prime(p, "period_prime_squared");
  require_unit_b(params, p, "period_prime_squared");
  if (p == 2) return small_power_of_two(params, 4);
  if (p > (std::uint64_t{1} << 32)) {
    throw InvalidArgument("period_prime_squared: p must be below 2^32");
  }
  const std::uint64_t p2 = p * p;
  const bool lifts = lucas::mat_pow(lucas::companion(params, p2), pi_p.pi, p2).is_identity();
  return {p2, lifts ? pi_p.pi : p * pi_p.pi, PeriodMethod::LiftCheck};
}

PeriodResult period_prime_squared(const LucasParams& params, std::uint64_t p) {
  return period_prime_squared(params, p, period_prime(params, p));
}

}  // namespace wallsun
