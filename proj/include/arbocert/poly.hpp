#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "arbocert/numeric.hpp"

namespace arbo {

// Dense univariate polynomial over Z. coeff(0) is the constant term; the
// zero polynomial is the empty coefficient vector (degree -1).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);  // constant term first

  static IntPoly constant(const BigInt& c);
  static IntPoly x();
  static IntPoly monomial(const BigInt& c, std::size_t deg);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& coeff(std::size_t i) const;
  const BigInt& lc() const;  // zero for the zero polynomial
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly scaled(const BigInt& k) const;
  IntPoly shifted(std::size_t k) const;  // * x^k
  IntPoly derivative() const;
  BigInt evaluate(const BigInt& x) const;
  BigRat evaluate(const BigRat& x) const;
  IntPoly compose(const IntPoly& g) const;  // this(g(x))
  IntPoly pow(unsigned long e) const;

  BigInt content() const;          // gcd of coefficients, >= 0 (0 for zero)
  IntPoly primitive_part() const;  // keeps the sign of the leading coeff

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<BigInt> c_;
};

// Dense univariate polynomial over Q, same conventions.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<BigRat> coeffs);
  explicit RatPoly(const IntPoly& p);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigRat& coeff(std::size_t i) const;
  const BigRat& lc() const;
  const std::vector<BigRat>& coeffs() const { return c_; }

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  RatPoly scaled(const BigRat& k) const;
  RatPoly derivative() const;
  BigRat evaluate(const BigRat& x) const;
  RatPoly monic() const;  // nonzero only

  // (D, F) with F integral primitive-ish and this == F / D, D > 0.
  std::pair<BigInt, IntPoly> clear_denominators() const;

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<BigRat> c_;
};

// Quotient when g divides f exactly over Z[x]; nullopt otherwise.
std::optional<IntPoly> exact_div(const IntPoly& f, const IntPoly& g);
// Quotient/remainder over Q (g nonzero).
std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g);

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f = q*g + r, deg r < deg g.
IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g);

// gcd over Z[x] via the primitive PRS, leading coefficient normalized > 0.
IntPoly poly_gcd(const IntPoly& f, const IntPoly& g);

// Resultant via the subresultant pseudo-remainder sequence. Exact, no
// rounding anywhere. Zero polynomials are rejected.
BigInt resultant(const IntPoly& f, const IntPoly& g);

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); deg f >= 1.
BigInt disc_oracle(const IntPoly& f);
BigRat disc_oracle(const RatPoly& f);

// Yun squarefree decomposition over Q: f = lc * prod factor_i^multiplicity_i
// with the factors monic, squarefree, pairwise coprime.
struct SquarefreeFactor {
  RatPoly factor;
  int multiplicity = 0;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const RatPoly& f);
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f);

// Degree of the multiplicity-one part (number of simple roots in Qbar).
int count_simple_roots(const RatPoly& f);
int count_simple_roots(const IntPoly& f);

// Monic rational roots with multiplicities, via squarefree decomposition and
// the rational root theorem. Nullopt when f does not split into rational
// linear factors.
std::optional<std::vector<std::pair<BigRat, int>>> rational_roots_if_split(
    const IntPoly& f);

// f composed with itself n times; n = 0 gives x. Degree d^n must stay within
// degree_cap or a capacity_error (naming the level reached) is thrown.
IntPoly iterate_poly(const IntPoly& f, int n, std::size_t degree_cap = 6561);
BigInt iterate_eval(const IntPoly& f, int n, const BigInt& x0);
BigRat iterate_eval(const IntPoly& f, int n, const BigRat& x0);

// x^d + A x^s + B with d >= 3, 1 <= s < d, A,B nonzero.
struct Trinomial {
  Trinomial(int d, int s, BigInt A, BigInt B);
  int d;
  int s;
  BigInt A;
  BigInt B;
  IntPoly poly() const;
};

// Closed form for disc(x^d + A x^s + B):
//   (-1)^(d(d-1)/2) B^(s-1) (d^d B^(d-s) + (-1)^(d-1) (d-s)^(d-s) s^s A^d).
BigInt trinomial_disc(const Trinomial& t);
BigInt trinomial_disc_params(unsigned long d, unsigned long s, const BigInt& A,
                             const BigInt& B);

// Closed form for Disc_x(f^n(x) - t) when every critical point of f is
// rational, in terms of the critical orbit:
//   sign * d^(n d^n) * lc^((d^n-1)/(d-1))
//        * prod_b prod_{j=1..n} (t - f^j(b))^(d^(n-j) e(b)),
// sign = (-1)^((d^n-1)(d^n-2)/2), e(b) = multiplicity of b as a root of f'.
// Must agree with disc_oracle(iterate_poly(f, n) - t) wherever that is
// computable; keeping both routes independent is the point.
BigRat iterate_disc_formula(const IntPoly& f, int n, const BigRat& t);

// JSON-facing representation: decimal coefficient strings, constant first.
std::vector<std::string> coeff_strings(const IntPoly& f);
IntPoly poly_from_coeff_strings(const std::vector<std::string>& coeffs);

}  // namespace arbo
