#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbocert/factor.hpp"
#include "arbocert/poly.hpp"

namespace arbo {

// phi(x) = x^p + kp x^(p-1) - kp, p an odd prime, k >= 1, p coprime to k.
// Critical points: 0 (multiplicity p-2) and a = -k(p-1) (multiplicity 1).
// The orbit of 0 is preperiodic: phi(0) = phi(-kp) = -kp.
struct OdoniFamily {
  OdoniFamily(unsigned long p, BigInt k);
  unsigned long p;
  BigInt k;
  IntPoly poly() const;
  BigInt critical_point() const { return -k * BigInt(p - 1); }
  SupportSet strip_set() const;  // Supp(kp)
  std::string id() const;
};

// phi(x) = x^d - cd x^(d-1) + c(d-1), d >= 3, c >= 1.
// Critical points: a = c(d-1) (multiplicity 1) and 0 (multiplicity d-2);
// phi(0) = a, so the orbit of the critical value rides the orbit of 0.
struct VojtaFamily {
  VojtaFamily(int d, BigInt c);
  int d;
  BigInt c;
  IntPoly poly() const;
  BigInt critical_point() const { return c * BigInt(d - 1); }
  SupportSet strip_set() const;  // Supp(d)
  std::string id() const;
};

// (critical point, multiplicity as a root of f'), increasing.
std::vector<std::pair<BigRat, int>> critical_data(const IntPoly& f);

// Forward orbit start, f(start), ..., f^n(start) with all values exact; a
// value exceeding digit_budget decimal digits raises capacity_error naming
// the level reached.
std::vector<BigInt> orbit_values(const IntPoly& f, const BigInt& start, int n,
                                 std::size_t digit_budget = 100000);
std::vector<BigRat> orbit_values(const IntPoly& f, const BigRat& start, int n,
                                 std::size_t digit_budget = 100000);

// |a| < kp and a^(p-1) > kp imply phi^n(a) > 0 for all n >= 1 (the orbit
// escapes through the positive basin after one step).
bool odoni_sign_certificate(const OdoniFamily& fam);

// Mobius-filtered primitive part of phi^n(0): prod_{m|n} (phi^m(0))^mu(n/m).
// The product is asserted integral; violations throw anomaly_error.
struct PrimitivePart {
  BigInt abs_value;
  int sign = 1;
};
PrimitivePart primitive_part(const VojtaFamily& fam, int n);
// Same computation on an arbitrary 1-indexed orbit-value sequence.
PrimitivePart primitive_part_of_sequence(const std::vector<BigInt>& b, int n);

// Rigid divisibility of b_n = phi^n(0), checked for every prime <= prime_bound
// dividing some b_n with n <= depth:
//   (1) v_p(b_n) > 0 implies v_p(b_{mn}) = v_p(b_n);
//   (2) v_p(b_n) >= e and v_p(b_m) >= e imply v_p(b_{gcd(m,n)}) >= e.
struct RigidViolation {
  unsigned long prime;
  int condition;  // 1 or 2
  int n, m;
  std::string detail;
};
struct RigidDivisibilityReport {
  int depth = 0;
  unsigned long prime_bound = 0;
  std::vector<RigidViolation> violations;
  bool ok() const { return violations.empty(); }
};
RigidDivisibilityReport verify_rigid_divisibility(const VojtaFamily& fam,
                                                  int depth,
                                                  unsigned long prime_bound);
RigidDivisibilityReport verify_rigid_divisibility_sequence(
    const std::vector<BigInt>& b, unsigned long prime_bound);

// Every non-primitive prime divisor q of phi^n(b) must divide phi^m(b) or
// phi^m(0) for some m <= floor(n/2). Checked for the primes the factoring
// budget reaches; an unfactored cofactor makes the result inconclusive
// rather than silently passing.
struct PpdRefinement {
  bool holds = true;
  bool conclusive = true;
  std::string note;
};
PpdRefinement ppd_refinement_check(const IntPoly& f, const BigInt& b, int n,
                                   const FactorBudget& budget = {});

// Orbit of a0 under f mod p with Brent cycle detection. skipped when p
// divides the denominator of a0.
struct OrbitModP {
  bool skipped = false;
  bool hits_zero = false;
  std::uint64_t tail = 0;    // steps before entering the cycle
  std::uint64_t period = 0;  // cycle length
};
OrbitModP orbit_mod_p(const IntPoly& f, const BigRat& a0, std::uint64_t p);

// H(phi^(n+1)(0)) against c*H(phi^n(0))^(d-1) and (c(d-1))^((d-1)^(n-3)),
// for n in [3, n_max]. All comparisons exact.
struct HeightGrowthRow {
  int n;
  BigInt height_next;        // H(phi^(n+1)(0))
  BigInt recurrence_bound;   // c * H(phi^n(0))^(d-1)
  BigInt closed_form_bound;  // (c(d-1))^((d-1)^(n-3))
  bool recurrence_ok = false;
  bool closed_form_ok = false;
};
std::vector<HeightGrowthRow> height_growth_check(const VojtaFamily& fam,
                                                 int n_max);

// The orbit of 0 for x^d - Cd x^(d-1) + C(d-1) with the parameter C left
// symbolic: b_n(C) in Z[C], deg b_n = d^(n-1).
IntPoly vojta_param_orbit_poly(int d, int n);

// prod_{m|n} b_m(C)^mu(n/m), expected to be a polynomial. exact_div is the
// primary route; a gcd reduction handles composite n where divisibility is
// not syntactically staged, and is flagged.
struct DynatomicAtZero {
  IntPoly value;
  bool used_gcd_fallback = false;
  bool is_polynomial = true;
  std::string note;
};
DynatomicAtZero vojta_dynatomic_at_zero(int d, int n);

// True only with certainty: squarefree mod one good prime implies squarefree
// over Q. Falls back to an exact gcd for small degrees or when reductions
// keep failing.
bool is_squarefree_certified(const IntPoly& f);

// Sound lower bound on the number of simple roots in Qbar: multiplicities
// can only merge or grow under reduction mod q, so the count mod a good q
// never exceeds the true count.
int simple_root_count_lower_bound(const IntPoly& f);

}  // namespace arbo
