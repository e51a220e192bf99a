#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbocert/poly.hpp"

namespace arbo {

// Arithmetic mod p for p < 2^62 (products fit unsigned 128-bit).
inline constexpr std::uint64_t kMaxFpModulus = (1ull << 62);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);  // p prime, a != 0

// Dense polynomial over F_p, constant term first, trailing zeros trimmed.
class FpPoly {
 public:
  FpPoly() : p_(0) {}
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static FpPoly from_int_poly(const IntPoly& f, std::uint64_t p);
  static FpPoly x(std::uint64_t p);
  static FpPoly constant(std::uint64_t p, std::uint64_t c);

  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t lc() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  bool operator==(const FpPoly& o) const = default;

  FpPoly scaled(std::uint64_t k) const;
  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t evaluate(std::uint64_t x) const;

 private:
  void normalize();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& f, const FpPoly& g);
FpPoly gcd(const FpPoly& f, const FpPoly& g);  // monic (or zero)
// base^e mod m, e an arbitrary nonnegative BigInt.
FpPoly powmod_poly(const FpPoly& base, const BigInt& e, const FpPoly& m);

bool is_squarefree(const FpPoly& f);

// Full factorization over F_p: squarefree split, then distinct-degree, then
// Cantor-Zassenhaus equal-degree splitting (randomized; seeded for
// reproducible runs). p must be an odd prime below 2^62; characteristic 2 is
// rejected by configuration.
struct FpFactor {
  FpPoly factor;  // monic irreducible
  int multiplicity = 0;
};
std::vector<FpFactor> fp_factor(const FpPoly& f,
                                std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// Degrees of the irreducible factors of a squarefree f, with repetition,
// via distinct-degree factorization only (no splitting); sorted descending.
std::vector<int> irreducible_degrees(const FpPoly& f);

// Cycle type of Frobenius acting on the roots of f mod p: the partition of
// deg f by irreducible factor degrees. nullopt when p divides lc(f) or
// f mod p is not squarefree (those primes are skipped by samplers).
std::optional<std::vector<int>> frobenius_cycle_type(const IntPoly& f,
                                                     std::uint64_t p);

// Factor shape of a trinomial x^d + A x^s + B at a ramified prime.
// When p divides the discriminant and p is coprime to A*B*d*s*(d-s), the
// reduction has exactly one multiple root eta, of multiplicity 2, with
// eta^(d-s) = -sA/d and eta^s = -dB/((d-s)A); the cofactor is separable and
// prime to (x - eta). gcd(d, s) = 1 is required so eta is determined by a
// Bezout combination of those two powers.
enum class ShapeKind { RamifiedShape, Unramified, HypothesisViolated };
struct ShapeResult {
  ShapeKind kind = ShapeKind::Unramified;
  std::uint64_t eta = 0;             // the double root, for RamifiedShape
  std::vector<int> cofactor_degrees; // irreducible degrees of f/(x-eta)^2
  std::string violated;              // which hypothesis failed
};
ShapeResult shape_check(const Trinomial& t, std::uint64_t p);

}  // namespace arbo
