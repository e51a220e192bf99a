#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbocert/dynamics.hpp"
#include "arbocert/factor.hpp"
#include "arbocert/numeric.hpp"
#include "arbocert/poly.hpp"

namespace arbo {

enum class Verdict { Maximal, NotMaximal, Unknown };
std::string verdict_string(Verdict v);  // "maximal" / "not_maximal" / "unknown"

// Per-level outcome of a square-obstruction test. `Maximal` always carries a
// stripped nonsquare value; `NotMaximal` always carries the exact square
// witness, so k*y^2 (or 21*y^2, or d_i*y^2) reproduces the tested value.
struct LevelCertificate {
  std::string family;
  int level = 0;
  Verdict verdict = Verdict::Unknown;
  std::string test_value;       // tested orbit quantity (digest when huge)
  std::string stripped_value;   // support-free part (digest when huge)
  std::size_t stripped_digits = 0;
  std::optional<BigRat> square_root;    // y with value = unit * y^2, NotMaximal
  std::optional<BigInt> witness_prime;  // odd-multiplicity prime, when named
  std::vector<std::string> notes;       // verified side conditions, budgets
};

enum class Overall { SurjectiveEvidence, FiniteIndexEvidence, Inconclusive };
// "surjective_evidence" / "finite_index_evidence" / "inconclusive"
std::string overall_string(Overall o);

struct TowerReport {
  std::string family;
  int depth = 0;
  std::vector<LevelCertificate> levels;
  Overall overall = Overall::Inconclusive;
  BigInt index_bound = 0;  // set iff overall == FiniteIndexEvidence
  // The congruence shortcut covers every level at once, not just those
  // computed; SurjectiveEvidence is otherwise evidence up to `depth` only.
  bool proves_all_levels = false;
  std::vector<std::string> notes;
};

// p prime, f monic: p divides every non-leading coefficient and p^2 does not
// divide the constant term.
bool eisenstein_certificate(const IntPoly& f, const BigInt& p);

// Checks f, f^2, ..., up to max_level (or as far as the degree cap allows).
// Composition is carried out with coefficients reduced mod p^2, which decides
// both conditions exactly while keeping level-n cost near d^(2n) word ops.
struct IteratesEisenstein {
  bool all_eisenstein = false;
  int levels_checked = 0;
  std::string note;
};
IteratesEisenstein iterates_eisenstein(const IntPoly& f, const BigInt& p,
                                       int max_level,
                                       std::size_t degree_cap = 6561);

// Level-n test for phi(x) = x^p + kp x^(p-1) - kp: m = phi^n(a) with
// a = -k(p-1). Maximal iff m != k y^2, decided two independent ways that must
// agree: is_perfect_square(m/k) after checking k | m, and the stripped-support
// route on Supp(kp). Side conditions from the underlying argument are verified
// on the way (v_q(m) = v_q(k) for q | k, gcd(m, p) = 1, m > 0) and recorded.
// Capacity overruns surface as Unknown with a budget note.
LevelCertificate odoni_level_certificate(const OdoniFamily& fam, int n,
                                         const FactorBudget& budget = {},
                                         std::size_t orbit_digit_budget =
                                             100000);

// For p >= 5, k = 1 mod 3, p coprime to k: a mod 3 follows the dichotomy
// (p = 1 mod 3 iff a = 0 mod 3; p = -1 mod 3 iff a = -1 mod 3), phi(a) = -1
// mod 3, and -1 is fixed: phi(-1) = -1 exactly. Together these force
// phi^n(a) = 2 mod 3 for all n >= 1, while k y^2 is 0 or 1 mod 3 — the
// nonsquare condition at every level at once.
struct Mod3Certificate {
  bool applies = false;
  bool fixed_point_reached = false;
  std::string note;
};
Mod3Certificate mod3_certificate(const BigInt& p, const BigInt& k);

TowerReport certify_odoni_tower(const OdoniFamily& fam, int depth,
                                const FactorBudget& budget = {},
                                std::size_t orbit_digit_budget = 100000);

// The index-2 example phi(x) = x^3 + 7x^2 - 7 with critical point a = -14/3.
// Level n tests whether 21 * phi^n(a) is a rational square; level 1 fails
// with witness 91/3 and every later level passes. Valuations v_7(phi^n(a)) = 1
// and v_3(phi^n(a)) = -3^n are verified per level.
IntPoly index2_poly();
TowerReport index2_report(int depth, std::size_t orbit_digit_budget = 100000);

// Hypothesis dichotomy for degree d: prime, or some prime q | d-1 with
// gcd(d-1, v_q(d-1)) = 1, or neither.
struct TwoTransitivity {
  enum class Case { Prime, QPrime, Neither };
  Case kind = Case::Neither;
  BigInt q = 0;  // witness for QPrime
  std::string str() const;
};
TwoTransitivity two_transitivity_hypothesis(const BigInt& d);

// Lattice data of f at p: points (i, v_p(coeff_i)) over nonzero coefficients
// and the lower convex hull. Slopes are exact rationals rise/run.
struct NewtonSegment {
  long run = 0;   // horizontal length > 0
  long rise = 0;  // total valuation change (negative on descending segments)
  long lattice_length = 0;  // gcd(run, |rise|)
};
struct NewtonPolygon {
  BigInt p;
  std::vector<std::pair<long, long>> points;
  std::vector<std::pair<long, long>> hull;  // lower hull vertices, left to right
  std::vector<NewtonSegment> segments;
};
NewtonPolygon newton_polygon(const IntPoly& f, const BigInt& p);

// For x^d + A x^(d-1) + B: certified iff v_p(B) >= 1, v_p(A) = 0 and
// gcd(d-1, v_p(B)) = 1, in which case the polygon consists of one segment of
// slope -v_p(B)/(d-1) and horizontal length d-1 (a totally ramified local
// factor of degree d-1) and one of slope 0 and length 1. Requires s = d-1.
struct NewtonCertificate {
  bool certified = false;
  NewtonPolygon polygon;
  std::string note;
};
NewtonCertificate newton_polygon_certificate(const Trinomial& t,
                                             const BigInt& p);

// Level-n test for phi(x) = x^d - cd x^(d-1) + c(d-1): the absolute value of
// the Mobius primitive part of phi^(n+1)(0) = phi^n(a), stripped of Supp(d),
// must be a nonsquare for transposition evidence. For n = 1 the primitive
// part has the closed form -((d-1)^(d-2) c^(d-1) - 1), and both routes are
// computed and compared.
LevelCertificate vojta_level_certificate(const VojtaFamily& fam, int n,
                                         std::size_t orbit_digit_budget =
                                             100000);
TowerReport certify_vojta_tower(const VojtaFamily& fam, int depth,
                                std::size_t orbit_digit_budget = 100000);

// Sufficient condition for membership in B_d: c prime with gcd(c, d-1) = 1
// makes every iterate Eisenstein at c (checked directly up to max_level).
struct BdEvidence {
  bool coprime = false;
  bool c_is_prime = false;
  bool eisenstein_at_c = false;
  int levels_checked = 0;
  std::string note;
};
BdEvidence bd_membership_evidence(const BigInt& d, const BigInt& c,
                                  int max_level);

// Fixed curve verifications. C1: y^2 = 2(x^3+6x^2-6) maps to
// C2: y^2 = x^3+48x^2-3072 by (8x,16y); C3: y^2 = 21(x^3+7x^2-7) maps to
// C4: y^2 = x^3+583443x^2-4053211077702843 by (3^5 7^3 x, 3^7 7^4 y). The
// listed C3 points are checked exactly and pushed through the map; bounded
// searches on C2 and C4 look for integral points with |x| <= bound.
struct CurvePointCheck {
  BigRat x, y;
  bool on_curve = false;
  BigInt image_x = 0, image_y = 0;
  bool image_integral = false;
  bool image_on_curve = false;
};
struct CurveCheckReport {
  std::string id;
  std::string equation;
  bool map_identity_ok = false;
  std::vector<CurvePointCheck> points;
  std::int64_t search_bound = 0;
  std::vector<std::pair<std::int64_t, BigInt>> found;  // (x, y >= 0)
  std::vector<std::int64_t> expected_x;                // anticipated hits
  bool passed = false;
};
std::vector<CurveCheckReport> curve_checks(std::int64_t bound = 1000000,
                                           int jobs = 1);

// Share of primes <= X whose residual orbit of a0 hits 0, i.e. primes
// dividing some orbit value, reported at the checkpoints 10^3, 10^4, X.
struct DensityRow {
  std::uint64_t limit = 0;
  long members = 0;
  long primes = 0;  // pi(limit)
  double ratio = 0.0;
};
struct DensityReport {
  std::string family;
  std::string a0;
  std::vector<DensityRow> rows;
  long skipped = 0;  // primes dividing the denominator of a0
};
DensityReport density_experiment(const IntPoly& f, const BigRat& a0,
                                 std::uint64_t X, int jobs = 1);

// Random cross-validation of the closed-form trinomial discriminant against
// the resultant route, plus the two fixed values 4212 and 8281.
struct DiscCheckReport {
  int samples = 0;
  int agreed = 0;
  bool fixed_values_ok = false;
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty() && fixed_values_ok; }
};
DiscCheckReport disc_equivalence_check(int samples, std::uint64_t seed);

// Random trinomials with a ramified prime meeting the shape hypotheses: the
// reduction must factor as (x - eta)^2 times distinct separable irreducibles
// with eta^(d-s) = -sA/d and eta^s = -dB/((d-s)A). Draws until `target`
// certified pairs (or an attempt cap).
struct ShapePropertyReport {
  int target = 0;
  int certified = 0;
  long attempts = 0;
  std::vector<std::string> failures;
  bool passed() const { return certified >= target && failures.empty(); }
};
ShapePropertyReport shape_property_check(int target, std::uint64_t seed,
                                         const FactorBudget& budget = {});

}  // namespace arbo
