// Acceptance gate: one line per criterion, fixed seeds and tolerances, wall
// clocks enforced. Exits nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "arbocert/certificates.hpp"
#include "arbocert/report.hpp"
#include "arbocert/wreath.hpp"

using namespace arbo;

namespace {

constexpr std::uint64_t kDiscSeed = 7;
constexpr std::uint64_t kShapeSeed = 1;
constexpr double kFrobeniusTol = 0.02;
constexpr std::uint64_t kFrobeniusPrimeBound = 100000;
constexpr int kJobs = 2;

const IntPoly kPhi32{-6, 0, 6, 1};

bool discriminant_routes_agree(std::string& detail) {
  DiscCheckReport rep = disc_equivalence_check(50, kDiscSeed);
  if (rep.samples != 50 || rep.agreed != 50 || !rep.passed()) {
    detail = "agreed " + std::to_string(rep.agreed) + "/" +
             std::to_string(rep.samples) +
             (rep.fixed_values_ok ? "" : ", fixed values wrong");
    return false;
  }
  return true;
}

bool iterate_discriminant_matches(std::string& detail) {
  for (int n : {1, 2}) {
    for (int t : {0, 1, -5}) {
      BigRat formula = iterate_disc_formula(kPhi32, n, BigRat(t));
      IntPoly shifted = iterate_poly(kPhi32, n) - IntPoly::constant(t);
      BigRat oracle(disc_oracle(shifted));
      if (formula != oracle) {
        detail = "mismatch at n = " + std::to_string(n) +
                 ", t = " + std::to_string(t);
        return false;
      }
    }
  }
  return true;
}

bool odoni_tower_depth_8(std::string& detail) {
  TowerReport rep = certify_odoni_tower(OdoniFamily(3, 2), 8);
  if (rep.levels.size() != 8) {
    detail = "expected 8 levels";
    return false;
  }
  for (const LevelCertificate& l : rep.levels) {
    if (l.verdict != Verdict::Maximal) {
      detail = "level " + std::to_string(l.level) + " is " +
               verdict_string(l.verdict);
      return false;
    }
  }
  if (!rep.levels[0].witness_prime || *rep.levels[0].witness_prime != 13) {
    detail = "level 1 witness is not 13";
    return false;
  }
  if (rep.levels[1].stripped_value != "10813") {
    detail = "level 2 stripped value is " + rep.levels[1].stripped_value;
    return false;
  }
  if (rep.overall != Overall::SurjectiveEvidence) {
    detail = "overall " + overall_string(rep.overall);
    return false;
  }
  return true;
}

bool mod3_shortcut_agrees(std::string& detail) {
  for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
    for (int k : {1, 4, 7}) {
      if (BigInt(k) % p == 0) continue;
      Mod3Certificate cert = mod3_certificate(p, k);
      if (!cert.applies || !cert.fixed_point_reached) {
        detail = "shortcut failed at p = " + std::to_string(p) +
                 ", k = " + std::to_string(k);
        return false;
      }
      OdoniFamily fam(p, k);
      for (int n = 1; n <= 3; ++n) {
        LevelCertificate l = odoni_level_certificate(fam, n);
        if (l.verdict != Verdict::Maximal) {
          detail = "direct certificate disagrees at p = " + std::to_string(p) +
                   ", k = " + std::to_string(k) + ", n = " + std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

bool index2_pattern(std::string& detail) {
  TowerReport rep = index2_report(6);
  if (rep.levels.size() != 6) {
    detail = "expected 6 levels";
    return false;
  }
  if (rep.levels[0].verdict != Verdict::NotMaximal ||
      !rep.levels[0].square_root ||
      *rep.levels[0].square_root != make_rat(91, 3)) {
    detail = "level 1 should fail with witness 91/3";
    return false;
  }
  for (int i = 1; i < 6; ++i) {
    if (rep.levels[i].verdict != Verdict::Maximal) {
      detail = "level " + std::to_string(i + 1) + " is " +
               verdict_string(rep.levels[i].verdict);
      return false;
    }
  }

  // Independent valuation check along the exact orbit.
  IntPoly f = index2_poly();
  std::vector<BigRat> orbit = orbit_values(f, make_rat(-14, 3), 6);
  if (BigRat(21) * orbit[1] != make_rat(91, 3) * make_rat(91, 3)) {
    detail = "21 * phi(a) is not (91/3)^2";
    return false;
  }
  long three_pow = 1;
  for (int n = 1; n <= 6; ++n) {
    three_pow *= 3;
    Valuation v7 = valuation(orbit[n], 7);
    Valuation v3 = valuation(orbit[n], 3);
    if (v7.is_infinite || v7.v != 1 || v3.is_infinite || v3.v != -three_pow) {
      detail = "valuations off at n = " + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool curve_transfers(std::string& detail) {
  std::vector<CurveCheckReport> reports = curve_checks(1000000, kJobs);
  if (reports.size() != 2 || reports[0].id != "C1->C2" ||
      reports[1].id != "C3->C4") {
    detail = "unexpected report layout";
    return false;
  }
  if (!reports[0].map_identity_ok) {
    detail = "symbolic map identity failed";
    return false;
  }
  if (!reports[0].found.empty()) {
    detail = "bounded search was expected to come up empty";
    return false;
  }
  if (reports[1].points.size() != 6) {
    detail = "expected 6 listed point checks";
    return false;
  }
  for (const CurvePointCheck& pc : reports[1].points) {
    if (!pc.on_curve || !pc.image_integral || !pc.image_on_curve) {
      detail = "a listed point failed its exact checks";
      return false;
    }
  }
  if (!reports[0].passed || !reports[1].passed) {
    detail = "a curve report did not pass";
    return false;
  }
  return true;
}

bool frobenius_matches_benchmarks(std::string& detail) {
  PermGroup full = wreath_generators(3, 2);
  PermGroup half = index2_candidate_group();
  enumerate(full);
  enumerate(half);
  if (full.order() != 1296 || half.order() != 648) {
    detail = "group orders are " + std::to_string(full.order()) + " and " +
             std::to_string(half.order());
    return false;
  }
  CycleTypeDistribution d_full = exact_cycle_distribution(full);
  CycleTypeDistribution d_half = exact_cycle_distribution(half);
  double tau = total_variation(d_full, d_half);

  CycleTypeDistribution emp_full = frobenius_distribution(
      iterate_poly(kPhi32, 2), kFrobeniusPrimeBound, kJobs);
  double tv_full = total_variation(emp_full, d_full);
  if (tv_full > kFrobeniusTol) {
    detail = "full-group sample at distance " + std::to_string(tv_full);
    return false;
  }

  CycleTypeDistribution emp_half = frobenius_distribution(
      iterate_poly(index2_poly(), 2), kFrobeniusPrimeBound, kJobs);
  double tv_half = total_variation(emp_half, d_half);
  double tv_cross = total_variation(emp_half, d_full);
  if (tv_half > kFrobeniusTol) {
    detail = "half-group sample at distance " + std::to_string(tv_half);
    return false;
  }
  if (tv_cross < tau / 2) {
    detail = "half-group sample too close to the full group (" +
             std::to_string(tv_cross) + " < " + std::to_string(tau / 2) + ")";
    return false;
  }
  return true;
}

bool dynatomic_specializations(std::string& detail) {
  for (int d : {3, 4, 5}) {
    for (int n = 1; n <= 5; ++n) {
      IntPoly b = vojta_param_orbit_poly(d, n);
      if (!is_squarefree_certified(b)) {
        detail = "orbit polynomial not squarefree at d = " +
                 std::to_string(d) + ", n = " + std::to_string(n);
        return false;
      }
      BigInt lc = b.coeff(b.degree());
      while (lc % (d - 1) == 0) lc /= (d - 1);
      if (lc != 1 && lc != -1) {
        detail = "leading coefficient is not a signed power of d - 1";
        return false;
      }
      DynatomicAtZero dz = vojta_dynatomic_at_zero(d, n);
      if (!dz.is_polynomial) {
        detail = "dynatomic quotient left a remainder at d = " +
                 std::to_string(d) + ", n = " + std::to_string(n);
        return false;
      }
      if (n >= 3 && simple_root_count_lower_bound(dz.value) < 3) {
        detail = "fewer than 3 certified simple roots at d = " +
                 std::to_string(d) + ", n = " + std::to_string(n);
        return false;
      }
      if (d == 3 && n == 2 && !(dz.value == IntPoly{1, 0, -2})) {
        detail = "degree-3 level-2 value is not -2C^2 + 1";
        return false;
      }
    }
  }
  return true;
}

bool divisibility_and_heights(std::string& detail) {
  const std::pair<int, int> params[] = {{3, 1}, {3, 2}, {4, 1}};
  for (auto [d, c] : params) {
    VojtaFamily fam(d, c);
    RigidDivisibilityReport rigid = verify_rigid_divisibility(fam, 6, 1000);
    if (!rigid.ok()) {
      detail = fam.id() + " has " + std::to_string(rigid.violations.size()) +
               " rigid divisibility violation(s)";
      return false;
    }
    for (int n = 1; n <= 6; ++n) {
      try {
        primitive_part(fam, n);
      } catch (const std::exception& e) {
        detail = fam.id() + " primitive part at n = " + std::to_string(n) +
                 ": " + e.what();
        return false;
      }
    }
    std::vector<HeightGrowthRow> rows = height_growth_check(fam, 6);
    if (rows.size() != 4) {
      detail = fam.id() + " height table has " + std::to_string(rows.size()) +
               " rows";
      return false;
    }
    for (const HeightGrowthRow& row : rows) {
      if (!row.recurrence_ok || !row.closed_form_ok) {
        detail = fam.id() + " height bound fails at n = " +
                 std::to_string(row.n);
        return false;
      }
    }
  }
  return true;
}

bool density_decreases(std::string& detail) {
  DensityReport rep = density_experiment(kPhi32, BigRat(2), 100000, kJobs);
  struct Frozen {
    std::uint64_t limit;
    long members, primes;
  };
  const Frozen frozen[] = {{1000, 9, 168}, {10000, 16, 1229},
                           {100000, 49, 9592}};
  if (rep.rows.size() != 3 || rep.skipped != 0) {
    detail = "unexpected row count or skips";
    return false;
  }
  for (int i = 0; i < 3; ++i) {
    const DensityRow& row = rep.rows[i];
    if (row.limit != frozen[i].limit || row.members != frozen[i].members ||
        row.primes != frozen[i].primes) {
      detail = "checkpoint " + std::to_string(frozen[i].limit) + " gave " +
               std::to_string(row.members) + "/" + std::to_string(row.primes);
      return false;
    }
  }
  if (!(rep.rows[2].ratio < rep.rows[0].ratio)) {
    detail = "proportion did not decrease";
    return false;
  }
  return true;
}

bool shape_property_holds(std::string& detail) {
  ShapePropertyReport rep = shape_property_check(100, kShapeSeed);
  if (!rep.passed()) {
    detail = std::to_string(rep.certified) + "/100 certified, " +
             std::to_string(rep.failures.size()) + " failure(s)";
    return false;
  }
  return true;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  bool (*run)(std::string& detail);
};

const Criterion kCriteria[] = {
    {"trinomial discriminant routes agree", 5, discriminant_routes_agree},
    {"iterate discriminant formula matches the resultant route", 30,
     iterate_discriminant_matches},
    {"x^3 + 6x^2 - 6 tower is maximal through level 8", 60,
     odoni_tower_depth_8},
    {"mod-3 shortcut agrees with direct certificates", 60,
     mod3_shortcut_agrees},
    {"index-2 example fails exactly at level 1", 30, index2_pattern},
    {"rational points transfer between the paired curves", 60,
     curve_transfers},
    {"sampled Frobenius classes match the enumerated groups", 300,
     frobenius_matches_benchmarks},
    {"parameter orbit polynomials are squarefree with simple roots", 60,
     dynatomic_specializations},
    {"rigid divisibility, primitive parts, and height bounds hold", 60,
     divisibility_and_heights},
    {"orbit-prime density decreases at the frozen checkpoints", 300,
     density_decreases},
    {"ramified-shape factorizations match the closed form", 60,
     shape_property_holds},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && seconds > c.budget_seconds) {
      ok = false;
      detail = "exceeded time budget";
    }
    std::printf("%s  %s (%.2fs / %.0fs)%s%s\n", ok ? "PASS" : "FAIL", c.name,
                seconds, c.budget_seconds, detail.empty() ? "" : " - ",
                detail.c_str());
    if (!ok) ++failures;
  }
  if (failures > 0)
    std::printf("%d of %zu criteria failed\n", failures, std::size(kCriteria));
  return failures == 0 ? 0 : 1;
}
