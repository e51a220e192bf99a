#include "arbocert/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "arbocert/factor.hpp"

namespace arbo {

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<BigInt> perfect_square_root(const BigInt& n) {
  if (n < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  return isqrt(n);
}

bool is_perfect_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<BigRat> perfect_square_root(const BigRat& q) {
  auto rn = perfect_square_root(BigInt(q.get_num()));
  if (!rn) return std::nullopt;
  auto rd = perfect_square_root(BigInt(q.get_den()));
  if (!rd) return std::nullopt;
  return make_rat(*rn, *rd);
}

bool is_perfect_square(const BigRat& q) {
  return perfect_square_root(q).has_value();
}

namespace {

// One Miller-Rabin round, base a, for odd n = d * 2^s + 1.
bool mr_composite_witness(const BigInt& n, const BigInt& d, unsigned long s,
                          const BigInt& a) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a proves n composite
}

}  // namespace

Primality classify_prime(const BigInt& n, int mr_rounds) {
  if (n < 2) return Primality::Composite;
  static const unsigned long small_primes[] = {2,  3,  5,  7,  11, 13,
                                               17, 19, 23, 29, 31, 37};
  for (unsigned long p : small_primes) {
    if (n == p) return Primality::Prime;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::Composite;
  }
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    // This witness set decides primality for every n < 2^64.
    for (unsigned long a : small_primes) {
      if (mr_composite_witness(n, d, s, BigInt(a)))
        return Primality::Composite;
    }
    return Primality::Prime;
  }
  int r = mpz_probab_prime_p(n.get_mpz_t(), std::max(mr_rounds, 1));
  if (r == 0) return Primality::Composite;
  if (r == 2) return Primality::Prime;
  return Primality::ProbablePrime;
}

bool is_prime(const BigInt& n, int mr_rounds) {
  return classify_prime(n, mr_rounds) != Primality::Composite;
}

namespace {

void require_prime(const BigInt& p, const char* where) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::string(where) + ": " + p.get_str() +
                                " is not prime");
  }
}

}  // namespace

Valuation valuation(const BigInt& n, const BigInt& p) {
  require_prime(p, "valuation");
  if (n == 0) return {0, true};
  BigInt rest;
  unsigned long e =
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return {static_cast<long>(e), false};
}

Valuation valuation(const BigRat& q, const BigInt& p) {
  require_prime(p, "valuation");
  if (q == 0) return {0, true};
  Valuation vn = valuation(BigInt(q.get_num()), p);
  Valuation vd = valuation(BigInt(q.get_den()), p);
  return {vn.v - vd.v, false};
}

SupportSet::SupportSet(std::vector<BigInt> primes) : primes_(std::move(primes)) {
  for (const BigInt& p : primes_) require_prime(p, "SupportSet");
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

SupportSet SupportSet::of(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("SupportSet::of: zero has no support");
  FactorMap fm = factor(n);
  if (!fm.complete()) {
    throw capacity_error(
        "SupportSet::of: factoring budget exhausted on " + decimal_digest(n), 0);
  }
  std::vector<BigInt> ps;
  ps.reserve(fm.factors.size());
  for (const auto& f : fm.factors) ps.push_back(f.prime);
  return SupportSet(std::move(ps));
}

SupportSet SupportSet::union_of(const SupportSet& a, const SupportSet& b) {
  std::vector<BigInt> ps = a.primes_;
  ps.insert(ps.end(), b.primes_.begin(), b.primes_.end());
  return SupportSet(std::move(ps));
}

bool SupportSet::contains(const BigInt& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

StripResult strip_support(const BigInt& n, const SupportSet& support) {
  if (n == 0) throw std::invalid_argument("strip_support: zero rejected");
  StripResult out;
  out.stripped = n;
  for (const BigInt& p : support.primes()) {
    unsigned long e = mpz_remove(out.stripped.get_mpz_t(),
                                 out.stripped.get_mpz_t(), p.get_mpz_t());
    if (e > 0) out.removed.emplace_back(p, e);
  }
  return out;
}

BezoutTriple bezout(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0)
    throw std::invalid_argument("bezout: both arguments zero");
  if (b == 0) return {abs(a), BigInt(sgn(a)), BigInt(0)};
  if (a == 0) return {abs(b), BigInt(0), BigInt(sgn(b))};
  BigInt g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  // Normalize to the least-|x| solution; x is unique mod b/g.
  BigInt step = abs(b / g);
  x %= step;
  BigInt alt = x > 0 ? BigInt(x - step) : BigInt(x + step);
  if (abs(alt) < abs(x) || (abs(alt) == abs(x) && alt > x)) x = alt;
  y = (g - a * x) / b;
  return {g, x, y};
}

int mobius(unsigned long n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be >= 1");
  int distinct = 0;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++distinct;
    }
  }
  if (n > 1) ++distinct;
  return (distinct % 2 == 0) ? 1 : -1;
}

BigInt mult_height(const BigRat& q) {
  if (q == 0) return 1;
  BigInt num = abs(BigInt(q.get_num()));
  BigInt den(q.get_den());
  return std::max(num, den);
}

BigInt mult_height(const BigInt& n) {
  BigInt a = abs(n);
  return a > 1 ? a : BigInt(1);
}

double log_height(const BigRat& q) {
  BigInt h = mult_height(q);
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, h.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

std::size_t decimal_digits(const BigInt& n) {
  if (n == 0) return 1;
  // sizeinbase may overestimate by one; correct exactly.
  std::size_t est = mpz_sizeinbase(n.get_mpz_t(), 10);
  if (est <= 1) return 1;
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, est - 1);
  return abs(n) >= pow10 ? est : est - 1;
}

std::size_t decimal_digits(const BigRat& q) {
  return std::max(decimal_digits(BigInt(q.get_num())),
                  decimal_digits(BigInt(q.get_den())));
}

std::string decimal_digest(const BigInt& n) {
  std::string s = n.get_str();
  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s = s.substr(1);
  }
  if (s.size() <= 40) return sign + s;
  return sign + s.substr(0, 12) + "..." + s.substr(s.size() - 12) +
         " (" + std::to_string(s.size()) + " digits)";
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<unsigned long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  sieve[0] = sieve[1] = false;
  for (unsigned long i = 2; i * i <= bound; ++i) {
    if (!sieve[i]) continue;
    for (unsigned long j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  for (unsigned long i = 2; i <= bound; ++i) {
    if (sieve[i]) out.push_back(i);
  }
  return out;
}

}  // namespace arbo
