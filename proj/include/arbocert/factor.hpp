#pragma once

#include <optional>
#include <vector>

#include "arbocert/numeric.hpp"

namespace arbo {

// Budgets for the factoring pipeline: trial division to trial_bound, then
// Pollard rho (Brent variant) with at most rho_attempts curves of
// rho_iterations steps each per composite piece. Whatever cannot be split in
// budget is reported honestly as an unfactored cofactor, never guessed.
struct FactorBudget {
  unsigned long trial_bound = 100000;
  unsigned long rho_iterations = 500000;
  int rho_attempts = 8;
  int mr_rounds = 40;
};

enum class CofactorStatus { One, ProbablePrime, CompositeUnfactored };

struct PrimePower {
  BigInt prime;
  unsigned long exponent = 0;
  // true when primality is deterministic (always the case below 2^64);
  // false when only a probabilistic test vouches for the prime.
  bool proven = true;
};

struct FactorMap {
  int sign = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
  BigInt cofactor{1};
  CofactorStatus cofactor_status = CofactorStatus::One;

  bool complete() const { return cofactor_status == CofactorStatus::One; }
  bool any_probable_only() const;
  std::optional<unsigned long> exponent_of(const BigInt& p) const;
  // sign * prod(prime^exponent) * cofactor; always equals the input.
  BigInt reconstruct() const;
};

// n must be nonzero.
FactorMap factor(const BigInt& n, const FactorBudget& budget = {});

}  // namespace arbo
