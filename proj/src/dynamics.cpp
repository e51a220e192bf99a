#include "arbocert/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "arbocert/fp.hpp"

namespace arbo {

OdoniFamily::OdoniFamily(unsigned long p_, BigInt k_) : p(p_), k(std::move(k_)) {
  if (p < 3 || !is_prime(BigInt(p)))
    throw std::invalid_argument("OdoniFamily: p must be an odd prime");
  if (k < 1) throw std::invalid_argument("OdoniFamily: k must be >= 1");
  if (mpz_divisible_ui_p(k.get_mpz_t(), p))
    throw std::invalid_argument("OdoniFamily: p must not divide k");
}

IntPoly OdoniFamily::poly() const {
  std::vector<BigInt> v(p + 1, BigInt(0));
  v[0] = -k * BigInt(p);
  v[p - 1] = k * BigInt(p);
  v[p] = 1;
  return IntPoly(std::move(v));
}

SupportSet OdoniFamily::strip_set() const {
  return SupportSet::union_of(SupportSet::of(k), SupportSet({BigInt(p)}));
}

std::string OdoniFamily::id() const {
  return "odoni(p=" + std::to_string(p) + ",k=" + k.get_str() + ")";
}

VojtaFamily::VojtaFamily(int d_, BigInt c_) : d(d_), c(std::move(c_)) {
  if (d < 3) throw std::invalid_argument("VojtaFamily: d must be >= 3");
  if (c < 1) throw std::invalid_argument("VojtaFamily: c must be >= 1");
}

IntPoly VojtaFamily::poly() const {
  std::vector<BigInt> v(d + 1, BigInt(0));
  v[0] = c * BigInt(d - 1);
  v[d - 1] = -c * BigInt(d);
  v[d] = 1;
  return IntPoly(std::move(v));
}

SupportSet VojtaFamily::strip_set() const { return SupportSet::of(BigInt(d)); }

std::string VojtaFamily::id() const {
  return "vojta(d=" + std::to_string(d) + ",c=" + c.get_str() + ")";
}

std::vector<std::pair<BigRat, int>> critical_data(const IntPoly& f) {
  if (f.degree() < 2)
    throw std::invalid_argument("critical_data: degree must be >= 2");
  auto roots = rational_roots_if_split(f.derivative());
  if (!roots) {
    throw std::invalid_argument(
        "critical_data: critical points are not all rational");
  }
  return *roots;
}

namespace {

template <typename T>
std::vector<T> orbit_impl(const IntPoly& f, const T& start, int n,
                          std::size_t digit_budget) {
  if (n < 0) throw std::invalid_argument("orbit_values: negative length");
  std::vector<T> out;
  out.reserve(n + 1);
  out.push_back(start);
  for (int i = 1; i <= n; ++i) {
    T next = f.evaluate(out.back());
    if (decimal_digits(next) > digit_budget) {
      throw capacity_error("orbit_values: value at level " +
                               std::to_string(i) + " exceeds " +
                               std::to_string(digit_budget) + " digits",
                           i - 1);
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

std::vector<BigInt> orbit_values(const IntPoly& f, const BigInt& start, int n,
                                 std::size_t digit_budget) {
  return orbit_impl(f, start, n, digit_budget);
}

std::vector<BigRat> orbit_values(const IntPoly& f, const BigRat& start, int n,
                                 std::size_t digit_budget) {
  return orbit_impl(f, start, n, digit_budget);
}

bool odoni_sign_certificate(const OdoniFamily& fam) {
  BigInt a = fam.critical_point();
  BigInt kp = fam.k * BigInt(fam.p);
  BigInt apow;
  mpz_pow_ui(apow.get_mpz_t(), a.get_mpz_t(), fam.p - 1);
  return abs(a) < kp && apow > kp;
}

PrimitivePart primitive_part_of_sequence(const std::vector<BigInt>& b, int n) {
  if (n < 1 || n > static_cast<int>(b.size()))
    throw std::invalid_argument("primitive_part: n out of range");
  BigInt num = 1, den = 1;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    int mu = mobius(static_cast<unsigned long>(n / m));
    if (mu == 1) num *= b[m - 1];
    if (mu == -1) den *= b[m - 1];
  }
  if (den == 0 || num == 0)
    throw anomaly_error("primitive_part: zero orbit value in the product");
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw anomaly_error(
        "primitive_part: Mobius product is not integral at n = " +
        std::to_string(n));
  }
  BigInt v = num / den;
  PrimitivePart out;
  out.sign = sgn(v);
  out.abs_value = abs(v);
  return out;
}

PrimitivePart primitive_part(const VojtaFamily& fam, int n) {
  std::vector<BigInt> orbit = orbit_values(fam.poly(), BigInt(0), n);
  return primitive_part_of_sequence(
      std::vector<BigInt>(orbit.begin() + 1, orbit.end()), n);
}

RigidDivisibilityReport verify_rigid_divisibility_sequence(
    const std::vector<BigInt>& b, unsigned long prime_bound) {
  RigidDivisibilityReport rep;
  rep.depth = static_cast<int>(b.size());
  rep.prime_bound = prime_bound;
  int N = rep.depth;
  for (unsigned long p : primes_up_to(prime_bound)) {
    BigInt bp(p);
    std::vector<long> v(N + 1, 0);
    bool relevant = false;
    for (int n = 1; n <= N; ++n) {
      if (b[n - 1] == 0) continue;  // treat as +infinity; never a violation
      BigInt rest;
      v[n] = static_cast<long>(
          mpz_remove(rest.get_mpz_t(), b[n - 1].get_mpz_t(), bp.get_mpz_t()));
      if (v[n] > 0) relevant = true;
    }
    if (!relevant) continue;
    for (int n = 1; n <= N; ++n) {
      if (v[n] <= 0) continue;
      for (int mult = 2; mult * n <= N; ++mult) {
        if (v[mult * n] != v[n]) {
          rep.violations.push_back(
              {p, 1, n, mult * n,
               "v(b_" + std::to_string(n) + ")=" + std::to_string(v[n]) +
                   " but v(b_" + std::to_string(mult * n) +
                   ")=" + std::to_string(v[mult * n])});
        }
      }
    }
    for (int n = 1; n <= N; ++n) {
      for (int m = n + 1; m <= N; ++m) {
        long e = std::min(v[n], v[m]);
        if (e < 1) continue;
        int g = std::gcd(n, m);
        if (v[g] < e) {
          rep.violations.push_back(
              {p, 2, n, m,
               "v(b_" + std::to_string(n) + "),v(b_" + std::to_string(m) +
                   ") >= " + std::to_string(e) + " but v(b_" +
                   std::to_string(g) + ")=" + std::to_string(v[g])});
        }
      }
    }
  }
  return rep;
}

RigidDivisibilityReport verify_rigid_divisibility(const VojtaFamily& fam,
                                                  int depth,
                                                  unsigned long prime_bound) {
  std::vector<BigInt> orbit = orbit_values(fam.poly(), BigInt(0), depth);
  return verify_rigid_divisibility_sequence(
      std::vector<BigInt>(orbit.begin() + 1, orbit.end()), prime_bound);
}

PpdRefinement ppd_refinement_check(const IntPoly& f, const BigInt& b, int n,
                                   const FactorBudget& budget) {
  if (n < 1) throw std::invalid_argument("ppd_refinement_check: n >= 1");
  PpdRefinement out;
  std::vector<BigInt> orbit_b = orbit_values(f, b, n);
  std::vector<BigInt> orbit_0 = orbit_values(f, BigInt(0), n / 2);
  const BigInt& target = orbit_b[n];
  if (target == 0) {
    out.note = "phi^n(b) = 0; nothing to check";
    return out;
  }
  FactorMap fm = factor(target, budget);
  if (!fm.complete()) {
    out.conclusive = false;
    out.note = "factoring budget exhausted; cofactor " +
               decimal_digest(fm.cofactor) + " unchecked";
  }
  for (const auto& pf : fm.factors) {
    const BigInt& q = pf.prime;
    bool primitive = true;
    for (int m = 1; m < n && primitive; ++m) {
      if (orbit_b[m] != 0 &&
          mpz_divisible_p(orbit_b[m].get_mpz_t(), q.get_mpz_t()))
        primitive = false;
    }
    if (primitive) continue;
    bool explained = false;
    for (int m = 1; m <= n / 2 && !explained; ++m) {
      if (orbit_b[m] != 0 &&
          mpz_divisible_p(orbit_b[m].get_mpz_t(), q.get_mpz_t()))
        explained = true;
      if (orbit_0[m] != 0 &&
          mpz_divisible_p(orbit_0[m].get_mpz_t(), q.get_mpz_t()))
        explained = true;
    }
    if (!explained) {
      out.holds = false;
      out.note = "prime " + q.get_str() +
                 " is non-primitive but unexplained below n/2";
      return out;
    }
  }
  return out;
}

OrbitModP orbit_mod_p(const IntPoly& f, const BigRat& a0, std::uint64_t p) {
  OrbitModP out;
  BigInt bp(static_cast<unsigned long>(p));
  if (mpz_divisible_p(BigInt(a0.get_den()).get_mpz_t(), bp.get_mpz_t())) {
    out.skipped = true;
    return out;
  }
  FpPoly fp = FpPoly::from_int_poly(f, p);
  auto red = [&](const BigInt& v) {
    BigInt r = v % bp;
    if (r < 0) r += bp;
    return r.get_ui();
  };
  std::uint64_t x0 =
      mulmod(red(a0.get_num()), invmod(red(a0.get_den()), p), p);
  auto step = [&fp](std::uint64_t v) { return fp.evaluate(v); };

  // Brent: find the period, then the tail.
  std::uint64_t power = 1, lam = 1;
  std::uint64_t tortoise = x0, hare = step(x0);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = step(hare);
    ++lam;
  }
  std::uint64_t mu = 0;
  tortoise = hare = x0;
  for (std::uint64_t i = 0; i < lam; ++i) hare = step(hare);
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  out.tail = mu;
  out.period = lam;
  // 0 appears in the orbit iff it appears among the first tail+period values.
  std::uint64_t v = x0;
  for (std::uint64_t i = 0; i < mu + lam; ++i) {
    if (v == 0) {
      out.hits_zero = true;
      break;
    }
    v = step(v);
  }
  return out;
}

std::vector<HeightGrowthRow> height_growth_check(const VojtaFamily& fam,
                                                 int n_max) {
  if (n_max < 3) throw std::invalid_argument("height_growth_check: n_max >= 3");
  std::vector<BigInt> orbit = orbit_values(fam.poly(), BigInt(0), n_max + 1);
  std::vector<HeightGrowthRow> rows;
  BigInt a = fam.critical_point();
  for (int n = 3; n <= n_max; ++n) {
    HeightGrowthRow row;
    row.n = n;
    row.height_next = mult_height(orbit[n + 1]);
    BigInt hn = mult_height(orbit[n]);
    BigInt hpow;
    mpz_pow_ui(hpow.get_mpz_t(), hn.get_mpz_t(),
               static_cast<unsigned long>(fam.d - 1));
    row.recurrence_bound = fam.c * hpow;
    BigInt expnt;
    mpz_ui_pow_ui(expnt.get_mpz_t(), static_cast<unsigned long>(fam.d - 1),
                  static_cast<unsigned long>(n - 3));
    if (!expnt.fits_ulong_p())
      throw capacity_error("height_growth_check: exponent too large", n);
    mpz_pow_ui(row.closed_form_bound.get_mpz_t(), a.get_mpz_t(),
               expnt.get_ui());
    row.recurrence_ok = row.height_next >= row.recurrence_bound;
    row.closed_form_ok = row.height_next >= row.closed_form_bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

IntPoly vojta_param_orbit_poly(int d, int n) {
  if (d < 3) throw std::invalid_argument("vojta_param_orbit_poly: d >= 3");
  if (n < 1) throw std::invalid_argument("vojta_param_orbit_poly: n >= 1");
  IntPoly C = IntPoly::x();
  IntPoly b = C.scaled(d - 1);  // b_1 = (d-1)C
  for (int i = 2; i <= n; ++i) {
    IntPoly bpow = b.pow(static_cast<unsigned long>(d - 1));
    b = bpow * b - C.scaled(d) * bpow + C.scaled(d - 1);
  }
  return b;
}

DynatomicAtZero vojta_dynatomic_at_zero(int d, int n) {
  if (n < 1) throw std::invalid_argument("vojta_dynatomic_at_zero: n >= 1");
  DynatomicAtZero out;
  std::map<int, IntPoly> bs;
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    int mu = mobius(static_cast<unsigned long>(n / m));
    if (mu == 0) continue;
    IntPoly bm = vojta_param_orbit_poly(d, m);
    if (mu == 1)
      num = num * bm;
    else
      den = den * bm;
  }
  if (auto q = exact_div(num, den)) {
    out.value = *q;
    return out;
  }
  out.used_gcd_fallback = true;
  IntPoly g = poly_gcd(num, den);
  auto qn = exact_div(num, g);
  auto qd = exact_div(den, g);
  if (qn && qd && qd->degree() == 0) {
    auto q = exact_div(*qn, *qd);
    if (q) {
      out.value = *q;
      out.note = "exact_div failed; recovered via gcd reduction";
      return out;
    }
  }
  out.is_polynomial = false;
  out.note = "Mobius product is not a polynomial";
  return out;
}

namespace {

// Fixed odd primes below 2^62 for modular certificates; spaced apart so a
// bad reduction for one is unlikely to repeat for the next.
const std::uint64_t kCertPrimes[] = {
    4611686018427387847ull,  // largest prime < 2^62
    4611686018427387817ull, 4611686018427387787ull, 4611686018427387761ull,
    4611686018427387751ull, 4611686018427387737ull, 4611686018427387733ull,
    4611686018427387709ull,
};

bool lc_divisible(const IntPoly& f, std::uint64_t q) {
  BigInt bq(static_cast<unsigned long>(q));
  return mpz_divisible_p(f.lc().get_mpz_t(), bq.get_mpz_t()) != 0;
}

}  // namespace

bool is_squarefree_certified(const IntPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("is_squarefree_certified: zero polynomial");
  if (f.degree() == 0) return true;
  for (std::uint64_t q : kCertPrimes) {
    if (lc_divisible(f, q)) continue;
    if (is_squarefree(FpPoly::from_int_poly(f, q))) return true;
  }
  // All reductions inconclusive; settle it exactly.
  return poly_gcd(f, f.derivative()).degree() == 0;
}

int simple_root_count_lower_bound(const IntPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("simple_root_count_lower_bound: zero");
  int best = 0;
  int tried = 0;
  for (std::uint64_t q : kCertPrimes) {
    if (lc_divisible(f, q)) continue;
    FpPoly fq = FpPoly::from_int_poly(f, q);
    FpPoly d = fq.derivative();
    if (d.is_zero()) continue;
    FpPoly g = gcd(fq, d);
    FpPoly radical = divmod(fq, g).first;  // squarefree part
    FpPoly repeated = gcd(radical, g);     // factors of multiplicity >= 2
    best = std::max(best, radical.degree() - repeated.degree());
    if (++tried >= 3) break;
  }
  return best;
}

}  // namespace arbo
