#include "arbocert/wreath.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"

using namespace arbo;

namespace {

PermGroup group_of(std::size_t m, std::vector<Perm> gens) {
  PermGroup g;
  g.degree = m;
  g.generators = std::move(gens);
  return g;
}

PermGroup s3() { return group_of(3, {Perm({1, 0, 2}), Perm({1, 2, 0})}); }

}  // namespace

TEST_CASE("permutation arithmetic") {
  Perm id = Perm::identity(4);
  CHECK(id.degree() == 4);

  Perm a({1, 2, 0});  // 3-cycle
  Perm b({1, 0, 2});  // transposition
  CHECK(a * a * a == Perm::identity(3));
  CHECK(b * b == Perm::identity(3));
  CHECK(!(a * b == b * a));
  CHECK(a * a.inverse() == Perm::identity(3));

  CHECK(a.cycle_type() == std::vector<int>{3});
  CHECK(b.cycle_type() == std::vector<int>{2, 1});
  CHECK(id.cycle_type() == std::vector<int>{1, 1, 1, 1});

  // (a*b) applies b first.
  Perm ab = a * b;
  CHECK(ab(0) == a(b(0)));

  CHECK_THROWS_AS(Perm({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Perm({0, 2}), std::invalid_argument);
}

TEST_CASE("partition strings") {
  CHECK(partition_string({3, 3, 2, 1}) == "3+3+2+1");
  CHECK(partition_string({1}) == "1");
}

TEST_CASE("iterated wreath products have the right orders") {
  struct Row {
    int d, n;
    unsigned long order;
  };
  for (Row r : std::initializer_list<Row>{
           {2, 1, 2}, {3, 1, 6}, {2, 2, 8}, {2, 3, 128}, {3, 2, 1296}}) {
    PermGroup g = wreath_generators(r.d, r.n);
    CHECK(g.order() == 0);  // not yet enumerated
    CHECK(enumerate(g) == r.order);
    CHECK(g.order() == r.order);
  }

  CHECK_THROWS_AS(wreath_generators(3, 7), capacity_error);
}

TEST_CASE("the index-2 candidate sits inside the full wreath group") {
  PermGroup full = wreath_generators(3, 2);
  PermGroup half = index2_candidate_group();
  CHECK(enumerate(full) == 1296);
  CHECK(enumerate(half) == 648);

  // elements() is sorted, so containment is a merge scan.
  CHECK(std::includes(full.elements->begin(), full.elements->end(),
                      half.elements->begin(), half.elements->end()));
}

TEST_CASE("enumeration respects its cap and handles trivial input") {
  PermGroup g =
      group_of(5, {Perm({1, 0, 2, 3, 4}), Perm({1, 2, 3, 4, 0})});
  CHECK_THROWS_AS(enumerate(g, 100), capacity_error);

  PermGroup trivial = group_of(3, {});
  CHECK(enumerate(trivial) == 1);
}

TEST_CASE("exact cycle-type distributions") {
  PermGroup g = s3();
  CHECK_THROWS_AS(exact_cycle_distribution(g), std::invalid_argument);
  enumerate(g);

  CycleTypeDistribution dist = exact_cycle_distribution(g);
  CHECK(dist.m == 3);
  CHECK(dist.total == 6);
  CHECK(dist.skips == 0);
  CHECK(dist.counts.at({1, 1, 1}) == 1);
  CHECK(dist.counts.at({2, 1}) == 3);
  CHECK(dist.counts.at({3}) == 2);
  CHECK(dist.frequency({2, 1}) == make_rat(1, 2));
  CHECK(dist.frequency({4}) == 0);
}

TEST_CASE("Frobenius sampling matches hand counts") {
  // x^2 - 1 splits mod every odd prime; 2 is ramified and skipped.
  CycleTypeDistribution dist = frobenius_distribution(IntPoly{-1, 0, 1}, 100);
  CHECK(dist.m == 2);
  CHECK(dist.skips == 1);
  CHECK(dist.total == 24);
  CHECK(dist.counts.at({1, 1}) == 24);
  CHECK(dist.counts.count({2}) == 0);
}

TEST_CASE("Frobenius sampling is deterministic across worker counts") {
  IntPoly f{-6, 0, 6, 1};
  CycleTypeDistribution one = frobenius_distribution(f, 1000, 1);
  CycleTypeDistribution four = frobenius_distribution(f, 1000, 4);
  CHECK(one.total == four.total);
  CHECK(one.skips == four.skips);
  CHECK(one.counts == four.counts);
}

TEST_CASE("total variation distance") {
  PermGroup sg = s3();
  enumerate(sg);
  PermGroup cg = group_of(3, {Perm({1, 2, 0})});
  enumerate(cg);

  CycleTypeDistribution ds3 = exact_cycle_distribution(sg);
  CycleTypeDistribution dc3 = exact_cycle_distribution(cg);
  CHECK(total_variation(ds3, ds3) == doctest::Approx(0.0));
  // S3 puts 1/2 on 2+1 (absent from C3); C3 puts 1/3 extra on each of
  // 1+1+1 and 3. TV = (1/2)(1/2 + 1/6 + 1/3) = 1/2.
  CHECK(total_variation(ds3, dc3) == doctest::Approx(0.5));

  CycleTypeDistribution d2 = frobenius_distribution(IntPoly{-1, 0, 1}, 100);
  CHECK_THROWS_AS(total_variation(ds3, d2), std::invalid_argument);
}
