#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arbo {

// Exact integers and rationals. GMP guarantees canonical representations
// (no leading zero limbs, rationals kept in lowest terms once canonicalized);
// everything built on top here stays exact, no floating point.
using BigInt = mpz_class;
using BigRat = mpq_class;

// Thrown when an exact computation would exceed a configured size budget.
// The certificate layer converts this into an "unknown" verdict instead of
// silently truncating.
class capacity_error : public std::runtime_error {
 public:
  capacity_error(const std::string& what, int level_reached)
      : std::runtime_error(what), level_reached_(level_reached) {}
  int level_reached() const { return level_reached_; }

 private:
  int level_reached_;
};

// Thrown when a value violates a structural property the caller asserted
// (e.g. a Mobius product that should be integral is not).
class anomaly_error : public std::runtime_error {
 public:
  explicit anomaly_error(const std::string& what) : std::runtime_error(what) {}
};

// num/den as a canonical rational; den must be nonzero.
BigRat make_rat(const BigInt& num, const BigInt& den);

// floor(sqrt(n)); rejects negative n.
BigInt isqrt(const BigInt& n);

// Engaged with the nonnegative root iff n is a perfect square (n >= 0 and
// isqrt(n)^2 == n). Negative n simply yields nullopt.
std::optional<BigInt> perfect_square_root(const BigInt& n);
bool is_perfect_square(const BigInt& n);

// Rational squares: num and den of the canonical form must both be squares.
std::optional<BigRat> perfect_square_root(const BigRat& q);
bool is_perfect_square(const BigRat& q);

enum class Primality { Composite, ProbablePrime, Prime };

// Deterministic below 2^64 (fixed Miller-Rabin witness set), probabilistic
// above with mr_rounds rounds.
Primality classify_prime(const BigInt& n, int mr_rounds = 40);
bool is_prime(const BigInt& n, int mr_rounds = 40);

// p-adic valuation. v(0) is +infinity, carried explicitly.
struct Valuation {
  long v = 0;
  bool is_infinite = false;
};
// p must be prime (validated); n arbitrary.
Valuation valuation(const BigInt& n, const BigInt& p);
// v(num) - v(den) on the canonical form.
Valuation valuation(const BigRat& q, const BigInt& p);

// A set of distinct primes, e.g. Supp(kp) for a family. Construction
// validates primality and sorts.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<BigInt> primes);
  // Supp(n): the primes dividing n. Requires n != 0 and a complete
  // factorization within the default budget (throws capacity_error if the
  // budget is exhausted first).
  static SupportSet of(const BigInt& n);
  static SupportSet union_of(const SupportSet& a, const SupportSet& b);

  bool contains(const BigInt& p) const;
  const std::vector<BigInt>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }

 private:
  std::vector<BigInt> primes_;  // sorted, distinct
};

struct StripResult {
  BigInt stripped;                                        // support-free part
  std::vector<std::pair<BigInt, unsigned long>> removed;  // prime -> exponent
};
// Divides each support prime out of n completely (repeated exact division,
// no factorization). n must be nonzero; the sign stays on `stripped`.
StripResult strip_support(const BigInt& n, const SupportSet& support);

struct BezoutTriple {
  BigInt g, x, y;  // g = gcd(a, b) >= 0 and a*x + b*y = g
};
// Normalized so |x| is minimal (ties resolved toward x >= 0).
BezoutTriple bezout(const BigInt& a, const BigInt& b);

// Mobius function; n >= 1.
int mobius(unsigned long n);

// Multiplicative height H(a/b) = max(|a|, b) in lowest terms; H(0) = 1.
BigInt mult_height(const BigRat& q);
BigInt mult_height(const BigInt& n);
// h = log H, as a double (only used for display/inequality sanity, the
// height comparisons themselves are exact BigInt comparisons).
double log_height(const BigRat& q);

// Number of decimal digits of |n| (1 for n = 0).
std::size_t decimal_digits(const BigInt& n);
std::size_t decimal_digits(const BigRat& q);

// Short printable fingerprint of a possibly huge integer: full decimal when
// small, otherwise digit count plus leading/trailing digits.
std::string decimal_digest(const BigInt& n);

// Primes <= bound, increasing.
std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace arbo
