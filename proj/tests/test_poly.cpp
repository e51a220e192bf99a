#include "arbocert/poly.hpp"

#include <algorithm>

#include "doctest.h"

using namespace arbo;

namespace {

const IntPoly kPhi32{-6, 0, 6, 1};    // x^3 + 6x^2 - 6
const IntPoly kIndex2{-7, 0, 7, 1};   // x^3 + 7x^2 - 7

}  // namespace

TEST_CASE("IntPoly basics and normalization") {
  CHECK(IntPoly().is_zero());
  CHECK(IntPoly().degree() == -1);
  CHECK(IntPoly{0}.is_zero());
  CHECK(IntPoly{5}.degree() == 0);
  CHECK(IntPoly{1, 2, 0}.degree() == 1);  // trailing zeros trimmed

  CHECK(kPhi32.degree() == 3);
  CHECK(kPhi32.coeff(0) == -6);
  CHECK(kPhi32.coeff(2) == 6);
  CHECK(kPhi32.coeff(7) == 0);  // out of range reads as zero
  CHECK(kPhi32.lc() == 1);
  CHECK(kPhi32.is_monic());
  CHECK(!IntPoly{1, 2}.is_monic());

  CHECK(IntPoly::x() == IntPoly{0, 1});
  CHECK(IntPoly::constant(7) == IntPoly{7});
  CHECK(IntPoly::monomial(3, 4) == IntPoly{0, 0, 0, 0, 3});
}

TEST_CASE("IntPoly ring operations") {
  IntPoly xp1{1, 1}, xm1{-1, 1};
  CHECK(xp1 * xm1 == IntPoly{-1, 0, 1});
  CHECK(xp1 + xm1 == IntPoly{0, 2});
  CHECK(xp1 - xp1 == IntPoly());
  CHECK(-xp1 == IntPoly{-1, -1});
  CHECK(xp1.pow(2) == IntPoly{1, 2, 1});
  CHECK(xp1.pow(0) == IntPoly{1});
  CHECK(IntPoly{1, 0, 1}.compose(xp1) == IntPoly{2, 2, 1});
  CHECK(kPhi32.scaled(2) == IntPoly{-12, 0, 12, 2});
  CHECK(xp1.shifted(2) == IntPoly{0, 0, 1, 1});
  CHECK(kPhi32.derivative() == IntPoly{0, 12, 3});
}

TEST_CASE("evaluation over Z and Q") {
  CHECK(kPhi32.evaluate(BigInt(-4)) == 26);
  CHECK(kPhi32.evaluate(BigInt(26)) == 21626);
  CHECK(kIndex2.evaluate(make_rat(-14, 3)) == make_rat(1183, 27));
}

TEST_CASE("content and primitive part keep the leading sign") {
  IntPoly f{-4, 0, -8};
  CHECK(f.content() == 4);
  CHECK(f.primitive_part() == IntPoly{-1, 0, -2});
  CHECK(IntPoly().content() == 0);
}

TEST_CASE("printing") {
  CHECK(kPhi32.str() == "x^3 + 6x^2 - 6");
  CHECK(IntPoly{0, 2}.str("C") == "2C");
  CHECK(IntPoly().str() == "0");
}

TEST_CASE("RatPoly clears denominators consistently") {
  RatPoly f({make_rat(1, 2), make_rat(-2, 3), BigRat(1)});
  auto [den, ip] = f.clear_denominators();
  CHECK(den == 6);
  CHECK(ip == IntPoly{3, -4, 6});
  CHECK(f.monic().lc() == 1);
  CHECK(RatPoly(kPhi32).evaluate(make_rat(-4, 1)) == 26);
}

TEST_CASE("exact division over Z[x]") {
  auto q = exact_div(IntPoly{-1, 0, 1}, IntPoly{-1, 1});
  REQUIRE(q.has_value());
  CHECK(*q == IntPoly{1, 1});
  CHECK(!exact_div(IntPoly{-1, 0, 1}, IntPoly{-2, 1}).has_value());
  CHECK_THROWS_AS(exact_div(kPhi32, IntPoly()), std::invalid_argument);
}

TEST_CASE("rational divmod") {
  auto [q, r] = divmod(RatPoly(IntPoly{-1, 0, 1}), RatPoly(IntPoly{-2, 1}));
  CHECK(q == RatPoly(IntPoly{2, 1}));
  CHECK(r == RatPoly(IntPoly{3}));
}

TEST_CASE("pseudo remainder") {
  // 4(x^2+1) = (2x-1)(2x+1) + 5
  CHECK(pseudo_rem(IntPoly{1, 0, 1}, IntPoly{1, 2}) == IntPoly{5});
}

TEST_CASE("primitive PRS gcd") {
  IntPoly sq{-1, 0, 1};
  CHECK(poly_gcd(sq * IntPoly{2, 1}, (sq * IntPoly{3, 1}).scaled(2)) == sq);
  CHECK(poly_gcd(IntPoly{1, 1}, IntPoly{2, 2}) == IntPoly{1, 1});
  CHECK(poly_gcd(IntPoly(), IntPoly{-2, -2}) == IntPoly{2, 2});
}

TEST_CASE("resultants and discriminants") {
  CHECK(resultant(IntPoly{-1, 0, 1}, IntPoly{-2, 1}) == 3);
  CHECK(resultant(IntPoly{-2, 1}, IntPoly{-1, 0, 1}) == 3);
  CHECK(disc_oracle(kPhi32) == 4212);
  CHECK(disc_oracle(kIndex2) == 8281);
  CHECK(disc_oracle(IntPoly{1, 0, 1}) == -4);
  CHECK(disc_oracle(IntPoly{1, -2, 0, 1}) == 5);
  CHECK(disc_oracle(RatPoly(kPhi32)) == BigRat(4212));
  CHECK_THROWS_AS(resultant(IntPoly(), kPhi32), std::invalid_argument);
}

TEST_CASE("closed-form trinomial discriminant agrees with the resultant") {
  Trinomial t1(3, 2, 6, -6);
  CHECK(trinomial_disc(t1) == 4212);
  CHECK(trinomial_disc(t1) == disc_oracle(t1.poly()));
  Trinomial t2(3, 2, 7, -7);
  CHECK(trinomial_disc(t2) == 8281);
  Trinomial t3(3, 1, -2, 1);
  CHECK(trinomial_disc(t3) == 5);
  CHECK(trinomial_disc_params(5, 4, 3, 8) == disc_oracle(Trinomial(5, 4, 3, 8).poly()));
  CHECK(Trinomial(3, 2, 6, -6).poly() == kPhi32);
}

TEST_CASE("trinomial construction validates shape") {
  CHECK_THROWS_AS(Trinomial(2, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Trinomial(3, 3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Trinomial(3, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Trinomial(3, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Trinomial(3, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("squarefree decomposition and simple roots") {
  // (x-1)^2 (x+2) = x^3 - 3x + 2
  IntPoly f{2, -3, 0, 1};
  auto dec = squarefree_decomposition(f);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].multiplicity == 1);
  CHECK(dec[0].factor == RatPoly(IntPoly{2, 1}));
  CHECK(dec[1].multiplicity == 2);
  CHECK(dec[1].factor == RatPoly(IntPoly{-1, 1}));
  CHECK(count_simple_roots(f) == 1);
  CHECK(count_simple_roots(kPhi32) == 3);
  CHECK(count_simple_roots(IntPoly{1, 2, 1}) == 0);
}

TEST_CASE("rational roots when the polynomial splits") {
  IntPoly f{2, -3, 0, 1};  // (x-1)^2 (x+2)
  auto roots = rational_roots_if_split(f);
  REQUIRE(roots.has_value());
  REQUIRE(roots->size() == 2);
  std::sort(roots->begin(), roots->end());
  CHECK((*roots)[0] == std::pair<BigRat, int>(BigRat(-2), 1));
  CHECK((*roots)[1] == std::pair<BigRat, int>(BigRat(1), 2));

  // 2x - 1 has the non-integral root 1/2.
  auto half = rational_roots_if_split(IntPoly{-1, 2});
  REQUIRE(half.has_value());
  CHECK((*half)[0].first == make_rat(1, 2));

  CHECK(!rational_roots_if_split(IntPoly{1, 0, 1}).has_value());
  CHECK(!rational_roots_if_split(kPhi32).has_value());
}

TEST_CASE("iteration by composition") {
  CHECK(iterate_poly(kPhi32, 0) == IntPoly::x());
  CHECK(iterate_poly(kPhi32, 1) == kPhi32);
  IntPoly f2 = iterate_poly(kPhi32, 2);
  CHECK(f2.degree() == 9);
  CHECK(f2 == kPhi32.compose(kPhi32));
  CHECK(f2.evaluate(BigInt(-4)) == 21626);

  CHECK(iterate_eval(kPhi32, 2, BigInt(-4)) == 21626);
  CHECK(iterate_eval(kIndex2, 1, make_rat(-14, 3)) == make_rat(1183, 27));

  try {
    iterate_poly(kPhi32, 3, 10);
    FAIL("expected capacity_error");
  } catch (const capacity_error& e) {
    CHECK(e.level_reached() == 2);
  }
}

TEST_CASE("iterate discriminant closed form matches the resultant route") {
  for (int n : {1, 2}) {
    IntPoly fn = iterate_poly(kPhi32, n);
    for (long t : {0L, 1L, -5L}) {
      BigInt direct = disc_oracle(fn - IntPoly::constant(t));
      CHECK(iterate_disc_formula(kPhi32, n, BigRat(t)) == BigRat(direct));
    }
  }
}

TEST_CASE("coefficient strings round trip") {
  auto strs = coeff_strings(kPhi32);
  REQUIRE(strs.size() == 4);
  CHECK(strs[0] == "-6");
  CHECK(strs[3] == "1");
  CHECK(poly_from_coeff_strings(strs) == kPhi32);
}
