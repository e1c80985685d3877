#ifndef WALLSUN_ARITH_HPP
#define WALLSUN_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace wallsun {

using Big = mpz_class;

/// Bad caller input: precondition violated (b ≡ 0 mod p, even Jacobi modulus, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A composite cofactor survived the configured Pollard-rho budget.
class IncompleteFactorization : public std::runtime_error {
 public:
  IncompleteFactorization(const Big& cofactor, const std::string& what)
      : std::runtime_error(what), cofactor_(cofactor) {}
  const Big& cofactor() const noexcept { return cofactor_; }

 private:
  Big cofactor_;
};

/// An internal cross-check failed. Always a bug, never an input problem.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace arith {

/// Default cap on Pollard-rho iterations per cofactor.
inline constexpr std::uint64_t kDefaultEffort = 1u << 22;

struct PrimePower {
  Big prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = product of prime^exponent over factors; primes strictly increasing.
struct Factorization {
  Big value;
  std::vector<PrimePower> factors;
  /// False when some factor above 2^64 is only a Miller-Rabin probable prime.
  bool certified = true;

  Big recompose() const;
  std::vector<Big> primes() const;
  bool divisible_by_square() const;
};

enum class Primality { Composite, Prime, ProbablePrime };

// 64-bit modular helpers. All intermediate products are 128-bit so any
// modulus below 2^64 is safe.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // a, b < m
  return a >= m - b ? a - (m - b) : a + b;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::optional<std::uint64_t> invmod(std::uint64_t a, std::uint64_t m);

/// Deterministic for every 64-bit input (fixed Miller-Rabin witness set).
bool is_prime(std::uint64_t n);

/// Exact for n < 2^64; above that the same witnesses give ProbablePrime.
Primality is_prime(const Big& n);

/// Primes p <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Trial division to 10^4, then Pollard-rho (Brent). Throws
/// IncompleteFactorization when a composite cofactor resists `effort`
/// iterations; throws InvalidArgument for n < 1.
Factorization factorize(const Big& n, std::uint64_t effort = kDefaultEffort);
Factorization factorize(std::uint64_t n, std::uint64_t effort = kDefaultEffort);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(std::int64_t a, std::uint64_t n);
int jacobi(const Big& a, const Big& n);

/// Least k >= 1 with b^k = 1 (mod m). Requires m >= 2, gcd(b, m) = 1.
std::uint64_t mul_order(const Big& b, std::uint64_t m);

/// Same, reusing a known multiple of the order (e.g. a group exponent).
std::uint64_t mul_order(std::uint64_t b, std::uint64_t m, const Factorization& order_multiple);

bool is_squarefree(const Big& n, std::uint64_t effort = kDefaultEffort);

/// Exponent of p in n (n != 0).
unsigned valuation(const Big& n, std::uint64_t p);

std::uint64_t euler_phi(const Factorization& f);

/// Merge two factorizations into that of their product.
Factorization multiply(const Factorization& x, const Factorization& y);

/// Throws InvalidArgument unless 0 <= v < 2^64.
std::uint64_t to_u64(const Big& v, const char* what);

}  // namespace arith
}  // namespace wallsun

#endif  // WALLSUN_ARITH_HPP
