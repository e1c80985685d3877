#ifndef WALLSUN_POLY_HPP
#define WALLSUN_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "wallsun/arith.hpp"

namespace wallsun::poly {

class ModPoly;

/// Dense polynomial over Z, constant term first. The zero polynomial has no
/// coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long> coeffs);
  explicit IntPoly(std::vector<Big> coeffs);

  /// c * x^n
  static IntPoly monomial(std::size_t n, const Big& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Big& lc() const;
  Big coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Big(0); }
  const std::vector<Big>& coeffs() const { return coeffs_; }

  IntPoly derivative() const;
  Big content() const;
  IntPoly primitive_part() const;
  Big eval(const Big& x) const;

  /// Coefficient-wise exact division; throws InternalInconsistency when some
  /// coefficient is not divisible by d.
  IntPoly divide_exact(const Big& d) const;

  /// Reduction mod a prime.
  ModPoly reduce(std::uint64_t p) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Big& k);
  friend IntPoly operator+(IntPoly x, const IntPoly& y) { return x += y; }
  friend IntPoly operator-(IntPoly x, const IntPoly& y) { return x -= y; }
  friend IntPoly operator*(const IntPoly& x, const IntPoly& y);
  friend IntPoly operator*(IntPoly x, const Big& k) { return x *= k; }
  friend IntPoly operator-(const IntPoly& x) { return x * Big(-1); }
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Big> coeffs_;
};

IntPoly pow(const IntPoly& base, std::uint64_t k);

/// Pseudo-remainder prem(a, b) = lc(b)^{deg a - deg b + 1} a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Polynomial over F_p, p prime, coefficients in [0, p).
class ModPoly {
 public:
  explicit ModPoly(std::uint64_t p) : p_(p) {}
  ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  ModPoly(std::uint64_t p, std::initializer_list<long> coeffs);

  static ModPoly one(std::uint64_t p) { return ModPoly(p, std::vector<std::uint64_t>{1}); }
  static ModPoly x(std::uint64_t p) { return ModPoly(p, std::vector<std::uint64_t>{0, 1}); }

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  std::uint64_t lc() const;
  std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

  ModPoly monic() const;
  ModPoly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;

  /// Lift to Z with coefficients in [0, p).
  IntPoly lift() const;

  ModPoly& operator+=(const ModPoly& o);
  ModPoly& operator-=(const ModPoly& o);
  ModPoly& operator*=(std::uint64_t k);
  friend ModPoly operator+(ModPoly x, const ModPoly& y) { return x += y; }
  friend ModPoly operator-(ModPoly x, const ModPoly& y) { return x -= y; }
  friend ModPoly operator*(const ModPoly& x, const ModPoly& y);
  friend ModPoly operator*(ModPoly x, std::uint64_t k) { return x *= k; }
  friend bool operator==(const ModPoly&, const ModPoly&) = default;

  std::string to_string() const;

 private:
  friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
  void normalize();
  std::uint64_t p_;
  std::vector<std::uint64_t> coeffs_;
};

/// Quotient and remainder; throws InvalidArgument on division by zero or
/// modulus mismatch.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly operator/(const ModPoly& a, const ModPoly& b);
ModPoly operator%(const ModPoly& a, const ModPoly& b);

/// base^k mod m.
ModPoly powmod(const ModPoly& base, const Big& k, const ModPoly& m);
ModPoly pow(const ModPoly& base, std::uint64_t k);

/// Monic gcd; gcd(0, 0) = 0.
ModPoly mod_gcd(const ModPoly& f, const ModPoly& g);

struct ModFactor {
  ModPoly factor;
  unsigned multiplicity = 0;
};

/// f = unit * prod factor^multiplicity with monic irreducible factors,
/// sorted by (degree, coefficients).
struct ModFactorization {
  std::uint64_t unit = 0;
  std::vector<ModFactor> factors;

  ModPoly expand(std::uint64_t p) const;
};

/// Squarefree decomposition, distinct-degree, then Cantor-Zassenhaus
/// equal-degree splitting with a fixed seed sequence.
ModFactorization factor_mod_p(const ModPoly& f);

/// Rabin's test: f of degree n is irreducible iff x^{p^n} = x mod f and
/// gcd(x^{p^{n/q}} - x, f) = 1 for every prime q | n.
bool is_irreducible(const ModPoly& f);

/// Resultant with Sylvester-matrix sign convention, rows of f first:
///   res(f, g) = lc(f)^{deg g} * prod_{f(a)=0} g(a),
/// so res(x - a, x - b) = a - b. Subresultant PRS, exact.
Big resultant(const IntPoly& f, const IntPoly& g);

/// (-1)^{N(N-1)/2} res(f, f') / lc(f), N = deg f >= 1.
Big discriminant(const IntPoly& f);

}  // namespace wallsun::poly

#endif  // WALLSUN_POLY_HPP
