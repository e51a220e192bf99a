#include "arbocert/certificates.hpp"

#include <algorithm>
#include <string>

#include "doctest.h"

using namespace arbo;

namespace {

bool any_note_contains(const std::vector<std::string>& notes,
                       const std::string& needle) {
  return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("verdict and overall strings") {
  CHECK(verdict_string(Verdict::Maximal) == "maximal");
  CHECK(verdict_string(Verdict::NotMaximal) == "not_maximal");
  CHECK(verdict_string(Verdict::Unknown) == "unknown");
  CHECK(overall_string(Overall::SurjectiveEvidence) == "surjective_evidence");
  CHECK(overall_string(Overall::FiniteIndexEvidence) ==
        "finite_index_evidence");
  CHECK(overall_string(Overall::Inconclusive) == "inconclusive");
}

TEST_CASE("Eisenstein certificate") {
  CHECK(eisenstein_certificate(IntPoly{-6, 0, 6, 1}, 2));
  CHECK(eisenstein_certificate(IntPoly{-6, 0, 6, 1}, 3));
  CHECK(eisenstein_certificate(IntPoly{-5, 0, 5, 0, 1}, 5));
  CHECK(!eisenstein_certificate(IntPoly{4, 0, 1}, 2));   // 4 | constant
  CHECK(!eisenstein_certificate(IntPoly{-6, 1, 6, 1}, 2));  // odd middle
  CHECK_THROWS_AS(eisenstein_certificate(IntPoly{1, 2}, 2),
                  std::invalid_argument);  // non-monic
  CHECK_THROWS_AS(eisenstein_certificate(IntPoly{-6, 0, 6, 1}, 4),
                  std::invalid_argument);  // composite p
}

TEST_CASE("Eisenstein persists under iteration for the right families") {
  IteratesEisenstein ok = iterates_eisenstein(IntPoly{-6, 0, 6, 1}, 3, 4);
  CHECK(ok.all_eisenstein);
  CHECK(ok.levels_checked == 4);

  // x^3 - 6x^2 + 4 fails at level 1: the constant term is 2^2.
  IteratesEisenstein bad = iterates_eisenstein(IntPoly{4, 0, -6, 1}, 2, 3);
  CHECK(!bad.all_eisenstein);

  IteratesEisenstein capped = iterates_eisenstein(IntPoly{-6, 0, 6, 1}, 3, 20);
  CHECK(capped.all_eisenstein);
  CHECK(capped.levels_checked == 8);  // 3^8 = 6561 is the degree cap
  CHECK(capped.note.find("degree cap") != std::string::npos);

  CHECK_THROWS_AS(
      iterates_eisenstein(IntPoly{-6, 0, 6, 1}, BigInt("2147483659"), 2),
      capacity_error);
}

TEST_CASE("Odoni level certificates decide squareness two ways") {
  OdoniFamily fam(3, 2);
  LevelCertificate l1 = odoni_level_certificate(fam, 1);
  CHECK(l1.verdict == Verdict::Maximal);
  CHECK(l1.test_value == "26");
  CHECK(l1.stripped_value == "13");
  REQUIRE(l1.witness_prime.has_value());
  CHECK(*l1.witness_prime == 13);
  CHECK(!l1.square_root.has_value());

  LevelCertificate l2 = odoni_level_certificate(fam, 2);
  CHECK(l2.verdict == Verdict::Maximal);
  CHECK(l2.test_value == "21626");
  CHECK(l2.stripped_value == "10813");
  REQUIRE(l2.witness_prime.has_value());
  CHECK(*l2.witness_prime == 11);

  // phi_(3,1) fixes 1, so every level is the square 1 * 1^2.
  OdoniFamily sq(3, 1);
  for (int n : {1, 2}) {
    LevelCertificate l = odoni_level_certificate(sq, n);
    CHECK(l.verdict == Verdict::NotMaximal);
    REQUIRE(l.square_root.has_value());
    CHECK(*l.square_root == 1);
  }
}

TEST_CASE("Odoni certificates degrade to unknown when budgets run out") {
  LevelCertificate l = odoni_level_certificate(OdoniFamily(3, 2), 3,
                                               FactorBudget{}, 4);
  CHECK(l.verdict == Verdict::Unknown);
  CHECK(any_note_contains(l.notes, "budget"));
}

TEST_CASE("mod-3 congruence certificate") {
  Mod3Certificate c51 = mod3_certificate(5, 1);
  CHECK(c51.applies);
  CHECK(c51.fixed_point_reached);
  CHECK(c51.note.find("mod 3") != std::string::npos);

  Mod3Certificate c74 = mod3_certificate(7, 4);
  CHECK(c74.applies);
  CHECK(c74.fixed_point_reached);

  CHECK(mod3_certificate(5, 4).fixed_point_reached);
  CHECK(!mod3_certificate(5, 2).applies);   // k = 2 mod 3
  CHECK(!mod3_certificate(3, 1).applies);   // p < 5
  CHECK(!mod3_certificate(7, 7).applies);   // p | k
}

TEST_CASE("Odoni towers") {
  TowerReport t32 = certify_odoni_tower(OdoniFamily(3, 2), 3);
  CHECK(t32.overall == Overall::SurjectiveEvidence);
  CHECK(!t32.proves_all_levels);
  REQUIRE(t32.levels.size() == 3);
  for (const auto& l : t32.levels) CHECK(l.verdict == Verdict::Maximal);

  TowerReport t51 = certify_odoni_tower(OdoniFamily(5, 1), 2);
  CHECK(t51.overall == Overall::SurjectiveEvidence);
  CHECK(t51.proves_all_levels);
  CHECK(any_note_contains(t51.notes, "congruence shortcut"));

  TowerReport t31 = certify_odoni_tower(OdoniFamily(3, 1), 2);
  CHECK(t31.overall == Overall::FiniteIndexEvidence);
  CHECK(t31.index_bound == 4);
  CHECK(any_note_contains(t31.notes, "square obstruction at 2 level(s)"));
}

TEST_CASE("the index-2 tower fails exactly at level 1") {
  CHECK(index2_poly() == IntPoly{-7, 0, 7, 1});

  TowerReport rep = index2_report(4);
  REQUIRE(rep.levels.size() == 4);
  CHECK(rep.levels[0].verdict == Verdict::NotMaximal);
  REQUIRE(rep.levels[0].square_root.has_value());
  CHECK(*rep.levels[0].square_root == make_rat(91, 3));
  for (int i = 1; i < 4; ++i)
    CHECK(rep.levels[i].verdict == Verdict::Maximal);
  REQUIRE(rep.levels[1].witness_prime.has_value());
  CHECK(*rep.levels[1].witness_prime == 274280161);
  REQUIRE(rep.levels[2].witness_prime.has_value());
  CHECK(*rep.levels[2].witness_prime == 421);

  CHECK(rep.overall == Overall::FiniteIndexEvidence);
  CHECK(rep.index_bound == 2);
  CHECK(any_note_contains(rep.notes, "index-2 pattern confirmed to depth 4"));
}

TEST_CASE("two-transitivity hypothesis dichotomy") {
  CHECK(two_transitivity_hypothesis(5).kind == TwoTransitivity::Case::Prime);
  CHECK(two_transitivity_hypothesis(7).kind == TwoTransitivity::Case::Prime);
  CHECK(two_transitivity_hypothesis(5).str() == "prime");

  TwoTransitivity t9 = two_transitivity_hypothesis(9);
  CHECK(t9.kind == TwoTransitivity::Case::QPrime);
  CHECK(t9.q == 2);
  CHECK(t9.str() == "q_prime(2)");

  TwoTransitivity t4 = two_transitivity_hypothesis(4);
  CHECK(t4.kind == TwoTransitivity::Case::QPrime);
  CHECK(t4.q == 3);

  TwoTransitivity t65 = two_transitivity_hypothesis(65);
  CHECK(t65.kind == TwoTransitivity::Case::Neither);
  CHECK(t65.str() == "neither");
}

TEST_CASE("Newton polygons") {
  NewtonPolygon np = newton_polygon(IntPoly{-6, 0, 6, 1}, 2);
  CHECK(np.points ==
        std::vector<std::pair<long, long>>{{0, 1}, {2, 1}, {3, 0}});
  CHECK(np.hull == std::vector<std::pair<long, long>>{{0, 1}, {3, 0}});
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0].run == 3);
  CHECK(np.segments[0].rise == -1);
  CHECK(np.segments[0].lattice_length == 1);
}

TEST_CASE("Newton polygon certificates for x^d + A x^(d-1) + B") {
  NewtonCertificate ok = newton_polygon_certificate(Trinomial(5, 4, 3, 8), 2);
  CHECK(ok.certified);
  CHECK(ok.polygon.hull ==
        std::vector<std::pair<long, long>>{{0, 3}, {4, 0}, {5, 0}});
  CHECK(ok.note.find("totally ramified") != std::string::npos);

  NewtonCertificate pa = newton_polygon_certificate(Trinomial(5, 4, 2, 8), 2);
  CHECK(!pa.certified);
  CHECK(pa.note.find("A") != std::string::npos);

  NewtonCertificate gc = newton_polygon_certificate(Trinomial(5, 4, 3, 4), 2);
  CHECK(!gc.certified);  // gcd(d-1, v_2(B)) = gcd(4, 2) = 2

  NewtonCertificate vb = newton_polygon_certificate(Trinomial(5, 4, 3, 3), 2);
  CHECK(!vb.certified);  // v_2(B) = 0

  CHECK_THROWS_AS(newton_polygon_certificate(Trinomial(5, 2, 3, 8), 2),
                  std::invalid_argument);
}

TEST_CASE("Vojta level certificates") {
  LevelCertificate l1 = vojta_level_certificate(VojtaFamily(3, 2), 1);
  CHECK(l1.verdict == Verdict::Maximal);
  REQUIRE(l1.witness_prime.has_value());
  CHECK(*l1.witness_prime == 7);
  CHECK(l1.test_value == "-7");
  CHECK(any_note_contains(l1.notes, "closed form cross-checked"));

  // (3,5): the level-1 value -49 is a negated square, so no transposition
  // evidence.
  LevelCertificate sq = vojta_level_certificate(VojtaFamily(3, 5), 1);
  CHECK(sq.verdict == Verdict::NotMaximal);
  REQUIRE(sq.square_root.has_value());
  CHECK(*sq.square_root == 7);
  CHECK(any_note_contains(sq.notes, "(primitive part negative)"));

  VojtaFamily v31(3, 1);
  LevelCertificate a = vojta_level_certificate(v31, 1);
  CHECK(a.verdict == Verdict::NotMaximal);
  CHECK(*a.square_root == 1);
  LevelCertificate b = vojta_level_certificate(v31, 2);
  CHECK(b.verdict == Verdict::NotMaximal);
  CHECK(*b.square_root == 3);
  LevelCertificate c = vojta_level_certificate(v31, 3);
  CHECK(c.verdict == Verdict::Maximal);
  CHECK(*c.witness_prime == 19);
}

TEST_CASE("Vojta towers") {
  TowerReport t32 = certify_vojta_tower(VojtaFamily(3, 2), 3);
  CHECK(t32.overall == Overall::SurjectiveEvidence);
  REQUIRE(t32.levels.size() == 3);
  CHECK(*t32.levels[1].witness_prime == 2221);
  CHECK(*t32.levels[2].witness_prime == 53);
  CHECK(any_note_contains(t32.notes, "prime"));

  // Mixed evidence is only inconclusive: a square here proves nothing.
  TowerReport t31 = certify_vojta_tower(VojtaFamily(3, 1), 3);
  CHECK(t31.overall == Overall::Inconclusive);
  CHECK(t31.index_bound == 0);
  CHECK(any_note_contains(t31.notes, "no transposition evidence at 2 level(s)"));

  TowerReport t95 = certify_vojta_tower(VojtaFamily(9, 5), 1);
  CHECK(any_note_contains(t95.notes, "q_prime(2)"));
  bool all_max = std::all_of(
      t95.levels.begin(), t95.levels.end(),
      [](const LevelCertificate& l) { return l.verdict == Verdict::Maximal; });
  CHECK((t95.overall == Overall::SurjectiveEvidence) == all_max);
}

TEST_CASE("membership evidence for the parameter families") {
  BdEvidence e35 = bd_membership_evidence(3, 5, 3);
  CHECK(e35.coprime);
  CHECK(e35.c_is_prime);
  CHECK(e35.eisenstein_at_c);
  CHECK(e35.levels_checked == 3);

  BdEvidence e42 = bd_membership_evidence(4, 2, 2);
  CHECK(e42.coprime);
  CHECK(e42.eisenstein_at_c);

  // gcd(3, 3) = 3 and the constant term is 9 = 3^2: both routes fail.
  BdEvidence e43 = bd_membership_evidence(4, 3, 2);
  CHECK(!e43.coprime);
  CHECK(!e43.eisenstein_at_c);

  BdEvidence e34 = bd_membership_evidence(3, 4, 2);
  CHECK(!e34.c_is_prime);
  CHECK(e34.note.find("composite") != std::string::npos);
}

TEST_CASE("curve identities, listed points, and bounded searches") {
  auto reports = curve_checks(2000000, 2);
  REQUIRE(reports.size() == 2);

  const CurveCheckReport& c12 = reports[0];
  CHECK(c12.id == "C1->C2");
  CHECK(c12.map_identity_ok);
  CHECK(c12.found.empty());
  CHECK(c12.expected_x.empty());
  CHECK(c12.passed);

  const CurveCheckReport& c34 = reports[1];
  CHECK(c34.id == "C3->C4");
  CHECK(c34.map_identity_ok);
  REQUIRE(c34.points.size() == 6);
  for (const auto& pt : c34.points) {
    CHECK(pt.on_curve);
    CHECK(pt.image_integral);
    CHECK(pt.image_on_curve);
  }
  CHECK(c34.expected_x ==
        std::vector<std::int64_t>{-388962, -90846, 194481});
  REQUIRE(c34.found.size() == 3);
  CHECK(c34.found[0].first == -388962);
  CHECK(c34.passed);

  // A small bound keeps only the points inside the window.
  auto small = curve_checks(100000, 1);
  CHECK(small[1].expected_x == std::vector<std::int64_t>{-90846});
  CHECK(small[1].passed);
}

TEST_CASE("density of orbit-meeting primes decreases") {
  DensityReport rep =
      density_experiment(IntPoly{-6, 0, 6, 1}, BigRat(2), 10000, 2);
  CHECK(rep.family == "x^3 + 6x^2 - 6");
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].limit == 1000);
  CHECK(rep.rows[0].members == 9);
  CHECK(rep.rows[0].primes == 168);
  CHECK(rep.rows[1].limit == 10000);
  CHECK(rep.rows[1].members == 16);
  CHECK(rep.rows[1].primes == 1229);
  CHECK(rep.skipped == 0);
  CHECK(rep.rows[1].ratio < rep.rows[0].ratio);

  DensityReport half =
      density_experiment(IntPoly{-6, 0, 6, 1}, make_rat(1, 2), 1000, 1);
  CHECK(half.skipped == 1);  // p = 2 divides the denominator
}

TEST_CASE("discriminant routes agree on random trinomials") {
  DiscCheckReport rep = disc_equivalence_check(60, 7);
  CHECK(rep.samples == 60);
  CHECK(rep.agreed == 60);
  CHECK(rep.fixed_values_ok);
  CHECK(rep.mismatches.empty());
  CHECK(rep.passed());
}

TEST_CASE("ramified shape property holds on random certified samples") {
  ShapePropertyReport rep = shape_property_check(5, 1);
  CHECK(rep.certified >= 5);
  CHECK(rep.failures.empty());
  CHECK(rep.passed());
  CHECK(rep.attempts >= rep.certified);
}
