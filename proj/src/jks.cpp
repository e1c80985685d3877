// Trinomial discriminants and the per-prime index criteria (JKS, Dedekind).

#include <numeric>
#include <string>

#include "wallsun/mono.hpp"

namespace wallsun::mono {

namespace {

using poly::IntPoly;
using poly::ModPoly;

Big big(std::uint64_t v) { return Big(static_cast<unsigned long>(v)); }

Big ipow(const Big& base, std::uint64_t e) {
  Big out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// Nonnegative residue of v mod m.
Big mod(const Big& v, const Big& m) {
  Big r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool divides(std::uint64_t p, const Big& v) { return mpz_divisible_ui_p(v.get_mpz_t(), p) != 0; }

unsigned val_u64(std::uint64_t n, std::uint64_t p) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

// (v + (-v)^{p^e}) / p mod p, for v coprime to p or e = 0. Exact: the
// numerator is divisible by p by Fermat, so working mod p^2 suffices.
Big frobenius_quotient(const Big& v, std::uint64_t p, unsigned e) {
  const Big pb = big(p);
  const Big p2 = pb * pb;
  Big pe = ipow(pb, e);
  Big t;
  const Big neg = mod(-v, p2);
  mpz_powm(t.get_mpz_t(), neg.get_mpz_t(), pe.get_mpz_t(), p2.get_mpz_t());
  const Big num = mod(v + t, p2);
  if (!divides(p, num)) {
    throw InternalInconsistency("jks: (v + (-v)^{p^e}) not divisible by p");
  }
  return mod(num / pb, pb);
}

// c * x^k + d as an IntPoly, raised to the n-th power by the binomial theorem.
IntPoly binomial_power(const Big& c, std::uint64_t k, const Big& d, std::uint64_t n) {
  std::vector<Big> coeffs(k * n + 1, Big(0));
  Big binom = 1;
  for (std::uint64_t j = 0; j <= n; ++j) {
    // term C(n, j) (c x^k)^j d^{n-j}
    coeffs[k * j] += binom * ipow(c, j) * ipow(d, n - j);
    binom = binom * big(n - j) / big(j + 1);
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace

TrinomialSpec TrinomialSpec::make(std::uint64_t N, std::uint64_t M, const Big& A, const Big& B) {
  if (!(0 < M && M < N)) {
    throw InvalidArgument("TrinomialSpec: need 0 < M < N (N=" + std::to_string(N) +
                          ", M=" + std::to_string(M) + ")");
  }
  TrinomialSpec t;
  t.N = N;
  t.M = M;
  t.A = A;
  t.B = B;
  t.r = std::gcd(N, M);
  t.N1 = N / t.r;
  t.M1 = M / t.r;
  const Big sign = (t.N1 % 2 == 0) ? Big(1) : Big(-1);
  t.D = ipow(big(N), t.N1) * ipow(B, t.N1 - t.M1) -
        sign * ipow(big(M), t.M1) * ipow(big(N - M), t.N1 - t.M1) * ipow(A, t.N1);
  return t;
}

IntPoly TrinomialSpec::to_poly() const {
  return IntPoly::monomial(N) + IntPoly::monomial(M, A) + IntPoly::monomial(0, B);
}

Big SwanDiscriminant::value() const {
  return sign * ipow(B, b_exponent) * ipow(D, d_exponent);
}

bool SwanDiscriminant::divisible_by(std::uint64_t p) const {
  return (b_exponent > 0 && divides(p, B)) || (d_exponent > 0 && divides(p, D));
}

SwanDiscriminant swan_discriminant(const TrinomialSpec& t) {
  SwanDiscriminant s;
  // N(N-1)/2 mod 2 without overflow.
  const std::uint64_t n4 = t.N % 4;
  s.sign = (n4 == 2 || n4 == 3) ? -1 : 1;
  s.B = t.B;
  s.b_exponent = t.M - 1;
  s.D = t.D;
  s.d_exponent = t.r;
  return s;
}

std::string_view to_string(JksCase c) {
  switch (c) {
    case JksCase::JKS1: return "JKS1";
    case JksCase::JKS2: return "JKS2";
    case JksCase::JKS3: return "JKS3";
    case JksCase::JKS4: return "JKS4";
    case JksCase::JKS5: return "JKS5";
  }
  return "?";
}

JksVerdict jks_prime_check(const TrinomialSpec& t, std::uint64_t p) {
  if (!arith::is_prime(p)) {
    throw InvalidArgument("jks_prime_check: " + std::to_string(p) + " is not prime");
  }
  if (!swan_discriminant(t).divisible_by(p)) {
    throw InvalidArgument("jks_prime_check: p=" + std::to_string(p) +
                          " does not divide the discriminant");
  }
  const Big pb = big(p);
  const bool pA = divides(p, t.A);
  const bool pB = divides(p, t.B);

  if (pA && pB) return {!divides(p, t.B / pb), JksCase::JKS1};

  if (pA) {
    const Big A2 = mod(t.A / pb, pb);
    const Big B1 = frobenius_quotient(t.B, p, val_u64(t.N, p));
    if (A2 == 0 && B1 != 0) return {true, JksCase::JKS2};
    const Big rest = mod(ipow(mod(-t.B, pb), t.M1) * ipow(A2, t.N1) - ipow(mod(-B1, pb), t.N1), pb);
    return {A2 != 0 && rest != 0, JksCase::JKS2};
  }

  if (pB) {
    const Big A1 = frobenius_quotient(t.A, p, val_u64(t.N - t.M, p));
    const Big B2 = mod(t.B / pb, pb);
    if (A1 == 0 && B2 != 0) return {true, JksCase::JKS3};
    const std::uint64_t k = t.N1 - t.M1;
    const Big rest = mod(ipow(mod(-t.A, pb), t.M1) * ipow(A1, k) - ipow(mod(-B2, pb), k), pb);
    const Big prod = mod(A1 * ipow(B2, t.M - 1) * rest, pb);
    return {prod != 0, JksCase::JKS3};
  }

  if (t.M % p == 0) {
    const unsigned m = std::min(val_u64(t.N, p), val_u64(t.M, p));
    const std::uint64_t pm = arith::to_u64(ipow(pb, m), "jks: p^m");
    const TrinomialSpec reduced = TrinomialSpec::make(t.N / pm, t.M / pm, t.A, t.B);
    const IntPoly G = reduced.to_poly();
    const IntPoly numerator = IntPoly::monomial(t.M, t.A) + IntPoly::monomial(0, t.B) +
                              binomial_power(-t.A, t.M / pm, -t.B, pm);
    const IntPoly H = numerator.divide_exact(pb);
    return {poly::mod_gcd(G.reduce(p), H.reduce(p)).is_one(), JksCase::JKS4};
  }

  const Big rn = ipow(big(t.r), t.N1);
  if (!mpz_divisible_p(t.D.get_mpz_t(), rn.get_mpz_t())) {
    throw InternalInconsistency("jks: D not divisible by r^{N1}");
  }
  const Big quotient = t.D / rn;
  const Big p2 = pb * pb;
  return {!mpz_divisible_p(quotient.get_mpz_t(), p2.get_mpz_t()), JksCase::JKS5};
}

bool dedekind_index_coprime(const IntPoly& T, std::uint64_t p) {
  if (T.is_zero() || T.lc() != 1) throw InvalidArgument("dedekind_index_coprime: T must be monic");
  if (!arith::is_prime(p)) {
    throw InvalidArgument("dedekind_index_coprime: " + std::to_string(p) + " is not prime");
  }
  const ModPoly Tbar = T.reduce(p);
  const auto fac = poly::factor_mod_p(Tbar);
  ModPoly gbar = ModPoly::one(p);
  IntPoly g{1};
  for (const auto& f : fac.factors) {
    gbar = gbar * f.factor;
    g = g * f.factor.lift();
  }
  const auto [hbar, rem] = poly::divmod(Tbar, gbar);
  if (!rem.is_zero()) throw InternalInconsistency("dedekind: radical does not divide T mod p");
  const IntPoly h = hbar.lift();
  const IntPoly F = (g * h - T).divide_exact(big(p));
  const ModPoly common = poly::mod_gcd(poly::mod_gcd(F.reduce(p), gbar), hbar);
  return common.is_one();
}

}  // namespace wallsun::mono
