#include "arbocert/factor.hpp"

#include <algorithm>
#include <map>

namespace arbo {

bool FactorMap::any_probable_only() const {
  for (const auto& f : factors) {
    if (!f.proven) return true;
  }
  return cofactor_status == CofactorStatus::ProbablePrime;
}

std::optional<unsigned long> FactorMap::exponent_of(const BigInt& p) const {
  for (const auto& f : factors) {
    if (f.prime == p) return f.exponent;
  }
  return std::nullopt;
}

BigInt FactorMap::reconstruct() const {
  BigInt out = sign;
  for (const auto& f : factors) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= pw;
  }
  return out * cofactor;
}

namespace {

// Brent's cycle-finding variant of Pollard rho with batched gcds.
// Returns a nontrivial factor of n, or nullopt if this curve fails.
std::optional<BigInt> brent_rho(const BigInt& n, unsigned long c,
                                unsigned long max_iters) {
  if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
  BigInt y = 2, g = 1, q = 1, x, ys;
  unsigned long r = 1;
  const unsigned long batch = 128;
  unsigned long iters = 0;
  auto step = [&](BigInt& v) {
    v = (v * v + c) % n;
  };
  while (g == 1 && iters < max_iters) {
    x = y;
    for (unsigned long i = 0; i < r && iters < max_iters; ++i, ++iters)
      step(y);
    unsigned long k = 0;
    while (k < r && g == 1 && iters < max_iters) {
      ys = y;
      unsigned long lim = std::min(batch, r - k);
      for (unsigned long i = 0; i < lim && iters < max_iters; ++i, ++iters) {
        step(y);
        q = q * abs(x - y) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    // Batch overshot: back up one step at a time.
    do {
      step(ys);
      BigInt d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == 1 || g == n) return std::nullopt;
  return g;
}

// Splits perfect powers m = r^k, returning (r, k) with k maximal.
std::pair<BigInt, unsigned long> perfect_power_root(const BigInt& m) {
  if (mpz_perfect_power_p(m.get_mpz_t()) == 0) return {m, 1};
  unsigned long maxk = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (unsigned long k = maxk; k >= 2; --k) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), k) != 0) {
      auto [base, e] = perfect_power_root(r);
      return {base, e * k};
    }
  }
  return {m, 1};
}

}  // namespace

FactorMap factor(const BigInt& n, const FactorBudget& budget) {
  if (n == 0) throw std::invalid_argument("factor: zero rejected");
  FactorMap out;
  out.sign = sgn(n);
  BigInt m = abs(n);

  std::map<BigInt, std::pair<unsigned long, bool>> found;  // prime -> (exp, proven)
  auto add_factor = [&found](const BigInt& p, unsigned long e, bool proven) {
    auto it = found.find(p);
    if (it == found.end())
      found.emplace(p, std::make_pair(e, proven));
    else {
      it->second.first += e;
      it->second.second = it->second.second && proven;
    }
  };

  // Trial division.
  if (m > 1) {
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), BigInt(2).get_mpz_t());
    if (e) add_factor(2, e, true);
  }
  for (unsigned long d = 3; d <= budget.trial_bound && m > 1; d += 2) {
    BigInt dd(d);
    if (dd * dd > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), dd.get_mpz_t());
      add_factor(dd, e, true);
    }
  }

  // Split remaining composite pieces with rho.
  std::vector<std::pair<BigInt, unsigned long>> work;  // (value, exponent)
  BigInt cof = 1;
  if (m > 1) work.emplace_back(m, 1);
  while (!work.empty()) {
    auto [v, mult] = work.back();
    work.pop_back();
    Primality pr = classify_prime(v, budget.mr_rounds);
    if (pr != Primality::Composite) {
      add_factor(v, mult, pr == Primality::Prime);
      continue;
    }
    auto [root, k] = perfect_power_root(v);
    if (k > 1) {
      work.emplace_back(root, mult * k);
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < budget.rho_attempts && !split; ++attempt) {
      auto g = brent_rho(v, 1 + 2 * static_cast<unsigned long>(attempt),
                         budget.rho_iterations);
      if (g) {
        work.emplace_back(*g, mult);
        work.emplace_back(v / *g, mult);
        split = true;
      }
    }
    if (!split) {
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), mult);
      cof *= pw;
    }
  }

  for (auto& [p, em] : found)
    out.factors.push_back({p, em.first, em.second});
  out.cofactor = cof;
  if (cof == 1) {
    out.cofactor_status = CofactorStatus::One;
  } else {
    Primality pr = classify_prime(cof, budget.mr_rounds);
    out.cofactor_status = pr == Primality::Composite
                              ? CofactorStatus::CompositeUnfactored
                              : CofactorStatus::ProbablePrime;
  }
  return out;
}

}  // namespace arbo
