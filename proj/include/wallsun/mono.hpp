#ifndef WALLSUN_MONO_HPP
#define WALLSUN_MONO_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wallsun/lucas.hpp"
#include "wallsun/poly.hpp"

namespace wallsun::mono {

/// x^N + A x^M + B with 0 < M < N, r = gcd(N, M), N1 = N/r, M1 = M/r and
///   D = N^{N1} B^{N1-M1} - (-1)^{N1} M^{M1} (N-M)^{N1-M1} A^{N1}.
struct TrinomialSpec {
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  Big A;
  Big B;
  std::uint64_t r = 0;
  std::uint64_t N1 = 0;
  std::uint64_t M1 = 0;
  Big D;

  /// Throws InvalidArgument unless 0 < M < N.
  static TrinomialSpec make(std::uint64_t N, std::uint64_t M, const Big& A, const Big& B);

  poly::IntPoly to_poly() const;

  friend bool operator==(const TrinomialSpec&, const TrinomialSpec&) = default;
};

/// Swan's closed form Delta = (-1)^{N(N-1)/2} B^{M-1} D^r, kept unexpanded.
struct SwanDiscriminant {
  int sign = 1;  ///< (-1)^{N(N-1)/2}
  Big B;
  std::uint64_t b_exponent = 0;  ///< M - 1
  Big D;
  std::uint64_t d_exponent = 0;  ///< r

  /// Expands the product; only sensible for modest degrees.
  Big value() const;
  /// p | Delta, decided from the factored shape.
  bool divisible_by(std::uint64_t p) const;
};

SwanDiscriminant swan_discriminant(const TrinomialSpec& t);

/// F_n(x) = x^{2 s^n} - a x^{s^n} - b.
struct PowerCompositionalSpec {
  LucasParams params;
  std::uint64_t s = 1;
  std::uint64_t n = 1;

  /// Throws InvalidArgument if s^n or 2 s^n overflows 64 bits, or s, n < 1.
  static PowerCompositionalSpec make(const LucasParams& params, std::uint64_t s, std::uint64_t n);

  std::uint64_t s_pow_n() const;
  TrinomialSpec trinomial() const;
};

/// Distinct primes dividing Delta(F_n) = (-b)^{s^n-1} s^{2n s^n} (a^2+4b)^{s^n},
/// ascending, read off the three bases without expanding anything.
std::vector<std::uint64_t> disc_primes(const PowerCompositionalSpec& spec);

/// Dedekind's criterion at p for monic T, assumed irreducible over Q:
/// true iff p does not divide the index [Z_K : Z[theta]].
bool dedekind_index_coprime(const poly::IntPoly& T, std::uint64_t p);

enum class JksCase { JKS1, JKS2, JKS3, JKS4, JKS5 };
std::string_view to_string(JksCase c);

struct JksVerdict {
  bool index_coprime = false;
  JksCase which = JksCase::JKS1;
};

/// The five-case trinomial criterion. Requires p | Delta(t); the trinomial
/// must be irreducible (caller's responsibility).
JksVerdict jks_prime_check(const TrinomialSpec& t, std::uint64_t p);

/// c + d*alpha in (Z/mZ)[x]/(x^2 - a x - b), m = p or p^2.
struct QuadElem {
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  std::uint64_t modulus = 0;
  std::uint64_t a = 0;  ///< a mod modulus
  std::uint64_t b = 0;  ///< b mod modulus

  static QuadElem scalar(const LucasParams& params, std::uint64_t c, std::uint64_t modulus);
  static QuadElem alpha(const LucasParams& params, std::uint64_t modulus);

  bool is_zero() const { return c == 0 && d == 0; }
  friend bool operator==(const QuadElem&, const QuadElem&) = default;
};

QuadElem operator*(const QuadElem& x, const QuadElem& y);
QuadElem operator+(const QuadElem& x, const QuadElem& y);
QuadElem operator-(const QuadElem& x, const QuadElem& y);

QuadElem quad_pow(const QuadElem& base, const Big& k);
QuadElem quad_pow(const QuadElem& base, std::uint64_t k);

/// Multiplicative order of an invertible element, by brute force (tests only
/// need small moduli). Returns 0 when the element is not a unit.
std::uint64_t quad_order(const QuadElem& x);

/// f(alpha^{p^m}) = alpha^{2p^m} - a alpha^{p^m} - b == 0 (mod p^2).
/// For dtilde = 0 (mod p) alpha is the double root 2^{-1} a lifted to Z/p^2.
/// Requires p >= 3 prime, p not dividing b, delta_p != +1.
bool lemma_main2_check(const LucasParams& params, std::uint64_t p, std::uint64_t m);

/// Same evaluation at an arbitrary scalar root candidate mod p^2.
bool lemma_main2_check_at(const LucasParams& params, std::uint64_t p, std::uint64_t m,
                          std::uint64_t root);

enum class Decider { JKS1, JKS2, JKS3, JKS4, JKS5, DedekindGeneric };
std::string_view to_string(Decider d);

enum class IrreducibilitySource { LemmaIrreducibleStarConditions, AssumedByCaller };
std::string_view to_string(IrreducibilitySource s);

struct PrimeVerdict {
  std::uint64_t p = 0;
  bool index_coprime = false;
  Decider decided_by = Decider::DedekindGeneric;
  friend bool operator==(const PrimeVerdict&, const PrimeVerdict&) = default;
};

struct MonogenicityReport {
  TrinomialSpec poly;
  std::vector<PrimeVerdict> prime_verdicts;
  bool monogenic = false;
  IrreducibilitySource irreducibility_source = IrreducibilitySource::AssumedByCaller;

  friend bool operator==(const MonogenicityReport&, const MonogenicityReport&) = default;
};

struct MonoOptions {
  /// Re-decide every prime with Dedekind and throw InternalInconsistency on
  /// disagreement with JKS.
  bool dedekind_cross_check = false;
};

/// Requires star-valid params (which make F_n irreducible).
MonogenicityReport is_monogenic_Fn(const PowerCompositionalSpec& spec, MonoOptions opts = {});

/// Arbitrary trinomial; irreducibility is the caller's assertion. Primes of
/// Delta come from factoring B and D.
MonogenicityReport is_monogenic_trinomial(const TrinomialSpec& t, MonoOptions opts = {});

struct TheoremHypotheses {
  bool star = false;
  bool gcd_bs = false;
  bool delta_conditions = false;
  bool overall = false;

  friend bool operator==(const TheoremHypotheses&, const TheoremHypotheses&) = default;
};

TheoremHypotheses theorem_hypotheses(const LucasParams& params, std::uint64_t s);

/// True iff no prime divisor of s is an (a,b)-Wall-Sun-Sun prime. Throws
/// InvalidArgument when the hypotheses fail.
bool predict_monogenic(const LucasParams& params, std::uint64_t s);

struct CrossValidationRow {
  std::uint64_t n = 0;
  MonogenicityReport report;
  bool agrees = true;  ///< with the prediction, when there is one

  friend bool operator==(const CrossValidationRow&, const CrossValidationRow&) = default;
};

struct CrossValidation {
  TheoremHypotheses hypotheses;
  std::optional<bool> prediction;  ///< absent outside the hypotheses
  std::vector<CrossValidationRow> rows;
  bool agreement = true;
  bool n_independent = true;
  bool outside_hypotheses = false;

  friend bool operator==(const CrossValidation&, const CrossValidation&) = default;
};

/// Compares predict_monogenic with is_monogenic_Fn for n = 1..n_max. When
/// the theorem's hypotheses fail but params are star-valid, the direct
/// verdicts are still computed and the result is flagged outside_hypotheses.
CrossValidation cross_validate(const LucasParams& params, std::uint64_t s, std::uint64_t n_max,
                               MonoOptions opts = {});

}  // namespace wallsun::mono

#endif  // WALLSUN_MONO_HPP
