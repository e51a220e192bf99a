#include "arbocert/factor.hpp"

#include "doctest.h"

using namespace arbo;

TEST_CASE("complete factorization of smooth numbers") {
  FactorMap fm = factor(360);
  CHECK(fm.sign == 1);
  REQUIRE(fm.factors.size() == 3);
  CHECK(fm.factors[0].prime == 2);
  CHECK(fm.factors[0].exponent == 3);
  CHECK(fm.factors[1].prime == 3);
  CHECK(fm.factors[1].exponent == 2);
  CHECK(fm.factors[2].prime == 5);
  CHECK(fm.factors[2].exponent == 1);
  CHECK(fm.complete());
  CHECK(!fm.any_probable_only());
  CHECK(fm.reconstruct() == 360);

  FactorMap neg = factor(-360);
  CHECK(neg.sign == -1);
  CHECK(neg.reconstruct() == -360);
}

TEST_CASE("units and zero") {
  FactorMap one = factor(1);
  CHECK(one.sign == 1);
  CHECK(one.factors.empty());
  CHECK(one.complete());
  CHECK(one.reconstruct() == 1);
  CHECK(factor(-1).reconstruct() == -1);
  CHECK_THROWS_AS(factor(0), std::invalid_argument);
}

TEST_CASE("exponent lookup") {
  FactorMap fm = factor(21626);
  CHECK(fm.exponent_of(2) == 1ul);
  CHECK(fm.exponent_of(11) == 1ul);
  CHECK(fm.exponent_of(983) == 1ul);
  CHECK(!fm.exponent_of(7).has_value());
}

TEST_CASE("rho splits semiprimes past the trial bound") {
  // 1000003 * 1000033, both prime, both above the reduced trial bound.
  FactorBudget b;
  b.trial_bound = 1000;
  FactorMap fm = factor(BigInt(1000003) * BigInt(1000033), b);
  REQUIRE(fm.factors.size() == 2);
  CHECK(fm.factors[0].prime == 1000003);
  CHECK(fm.factors[1].prime == 1000033);
  CHECK(fm.complete());
  CHECK(fm.factors[0].proven);
}

TEST_CASE("perfect powers are unwound before splitting") {
  BigInt p(1000003);
  FactorBudget b;
  b.trial_bound = 1000;
  FactorMap fm = factor(p * p * p, b);
  REQUIRE(fm.factors.size() == 1);
  CHECK(fm.factors[0].prime == p);
  CHECK(fm.factors[0].exponent == 3);
  CHECK(fm.complete());
}

TEST_CASE("probable primes land in factors, flagged unproven") {
  BigInt m89("618970019642690137449562111");  // 2^89 - 1, prime
  FactorMap fm = factor(m89);
  REQUIRE(fm.factors.size() == 1);
  CHECK(fm.factors[0].prime == m89);
  CHECK(fm.factors[0].exponent == 1);
  CHECK(!fm.factors[0].proven);
  CHECK(fm.complete());
  CHECK(fm.any_probable_only());
}

TEST_CASE("an exhausted budget leaves an honest composite cofactor") {
  BigInt p, q, t(10);
  mpz_pow_ui(t.get_mpz_t(), t.get_mpz_t(), 15);
  mpz_nextprime(p.get_mpz_t(), t.get_mpz_t());
  t *= 2;
  mpz_nextprime(q.get_mpz_t(), t.get_mpz_t());

  FactorBudget tiny;
  tiny.trial_bound = 100;
  tiny.rho_iterations = 20;
  tiny.rho_attempts = 1;
  FactorMap fm = factor(p * q, tiny);
  CHECK(!fm.complete());
  CHECK(fm.cofactor_status == CofactorStatus::CompositeUnfactored);
  CHECK(fm.cofactor == p * q);
  CHECK(fm.reconstruct() == p * q);
}

TEST_CASE("reconstruct always returns the input") {
  for (long n : {2L, -97L, 1024L, 9999991L, 21626L, 4212L, 8281L}) {
    CHECK(factor(n).reconstruct() == n);
  }
}
