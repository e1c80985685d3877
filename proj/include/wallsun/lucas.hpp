#ifndef WALLSUN_LUCAS_HPP
#define WALLSUN_LUCAS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "wallsun/arith.hpp"

namespace wallsun {

/// The recurrence U_0 = 0, U_1 = 1, U_n = a U_{n-1} + b U_{n-2}, together
/// with the reduced discriminant
///   dtilde = a^2 + 4b      (a odd)
///          = (a/2)^2 + b   (a even)
/// and whether the standing conditions hold: a != 0 (mod 4), b and dtilde
/// squarefree.
struct LucasParams {
  Big a;
  Big b;
  Big dtilde;
  bool star_valid = false;

  /// Throws InvalidArgument unless a, b >= 1.
  static LucasParams make(const Big& a, const Big& b);
  static LucasParams make(std::uint64_t a, std::uint64_t b) {
    return make(Big(static_cast<unsigned long>(a)), Big(static_cast<unsigned long>(b)));
  }

  /// a^2 + 4b, the discriminant of x^2 - a x - b.
  Big quadratic_discriminant() const { return a * a + 4 * b; }

  std::uint64_t a_mod(std::uint64_t m) const;
  std::uint64_t b_mod(std::uint64_t m) const;
};

enum class PeriodMethod { BruteIteration, MatrixOrder, LiftCheck, DirectMod2Table };

std::string_view to_string(PeriodMethod m);

struct PeriodResult {
  std::uint64_t modulus = 0;
  std::uint64_t pi = 0;
  PeriodMethod method = PeriodMethod::BruteIteration;
  friend bool operator==(const PeriodResult&, const PeriodResult&) = default;
};

/// Local data at an odd prime p: the Legendre symbol of dtilde and
/// lambda = ord_p(b^2) (absent when p | b).
struct PrimeContext {
  std::uint64_t p = 0;
  int delta_p = 0;
  std::optional<std::uint64_t> lambda;

  static PrimeContext make(const LucasParams& params, std::uint64_t p);
};

/// Legendre symbol (dtilde / p) for an odd prime p.
int delta(const LucasParams& params, std::uint64_t p);

namespace lucas {

/// 2x2 matrix over Z/mZ, row-major.
struct Mat2 {
  std::array<std::uint64_t, 4> e{};
  static Mat2 identity() { return {{1, 0, 0, 1}}; }
  bool is_identity() const { return e == std::array<std::uint64_t, 4>{1, 0, 0, 1}; }
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t m);
Mat2 mat_pow(Mat2 base, const Big& k, std::uint64_t m);
Mat2 mat_pow(Mat2 base, std::uint64_t k, std::uint64_t m);

/// Companion matrix [[0, b], [1, a]] reduced mod m. Row vector
/// (U_n, U_{n+1}) times it gives (U_{n+1}, U_{n+2}).
Mat2 companion(const LucasParams& params, std::uint64_t m);

}  // namespace lucas

/// U_n mod m by companion-matrix powering.
std::uint64_t lucas_u_mod(const LucasParams& params, const Big& n, std::uint64_t m);
std::uint64_t lucas_u_mod(const LucasParams& params, std::uint64_t n, std::uint64_t m);

/// Reference period by pair iteration; requires m >= 2 and gcd(b, m) = 1.
PeriodResult period(const LucasParams& params, std::uint64_t m);

/// pi(p) as the order of the companion matrix in GL_2(F_p). Requires p prime,
/// p not dividing b. p = 2 goes through the mod-4 table.
PeriodResult period_prime(const LucasParams& params, std::uint64_t p);

/// pi(p^2): for odd p tests C^{pi(p)} = I mod p^2; p = 2 is enumerated.
PeriodResult period_prime_squared(const LucasParams& params, std::uint64_t p);

/// Same, reusing an already computed pi(p).
PeriodResult period_prime_squared(const LucasParams& params, std::uint64_t p,
                                  const PeriodResult& pi_p);

}  // namespace wallsun

#endif  // WALLSUN_LUCAS_HPP
