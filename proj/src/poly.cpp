#include "arbocert/poly.hpp"

#include "arbocert/factor.hpp"

#include <algorithm>
#include <sstream>

namespace arbo {

namespace {
const BigInt kZeroInt(0);
const BigRat kZeroRat(0);
}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  normalize();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  normalize();
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const BigInt& c) {
  return IntPoly(std::vector<BigInt>{c});
}

IntPoly IntPoly::x() { return IntPoly({0, 1}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t deg) {
  std::vector<BigInt> v(deg + 1, BigInt(0));
  v[deg] = c;
  return IntPoly(std::move(v));
}

const BigInt& IntPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : kZeroInt;
}

const BigInt& IntPoly::lc() const {
  return c_.empty() ? kZeroInt : c_.back();
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v = c_;
  for (auto& a : v) a = -a;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<BigInt> v(c_.size() + o.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      v[i + j] += c_[i] * o.c_[j];
    }
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::scaled(const BigInt& k) const {
  if (k == 0) return IntPoly();
  std::vector<BigInt> v = c_;
  for (auto& a : v) a *= k;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::shifted(std::size_t k) const {
  if (is_zero()) return IntPoly();
  std::vector<BigInt> v(c_.size() + k, BigInt(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<BigInt> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigInt(i);
  return IntPoly(std::move(v));
}

BigInt IntPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

BigRat IntPoly::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + BigRat(c_[i]);
  return acc;
}

IntPoly IntPoly::compose(const IntPoly& g) const {
  IntPoly acc;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = acc * g + IntPoly::constant(c_[i]);
  return acc;
}

IntPoly IntPoly::pow(unsigned long e) const {
  IntPoly acc = IntPoly::constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& a : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  BigInt g = content();
  std::vector<BigInt> v = c_;
  for (auto& a : v) a /= g;
  return IntPoly(std::move(v));
}

std::string IntPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    BigInt a = c_[i];
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    BigInt mag = abs(a);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) {
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RatPoly::RatPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) {
  for (auto& a : c_) a.canonicalize();
  normalize();
}

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c_.emplace_back(a);
}

void RatPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigRat& RatPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : kZeroRat;
}

const BigRat& RatPoly::lc() const {
  return c_.empty() ? kZeroRat : c_.back();
}

RatPoly RatPoly::operator-() const {
  std::vector<BigRat> v = c_;
  for (auto& a : v) a = -a;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<BigRat> v(std::max(c_.size(), o.c_.size()), BigRat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<BigRat> v(std::max(c_.size(), o.c_.size()), BigRat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<BigRat> v(c_.size() + o.c_.size() - 1, BigRat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return RatPoly(std::move(v));
}

RatPoly RatPoly::scaled(const BigRat& k) const {
  if (k == 0) return RatPoly();
  std::vector<BigRat> v = c_;
  for (auto& a : v) a *= k;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<BigRat> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigRat(i);
  return RatPoly(std::move(v));
}

BigRat RatPoly::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RatPoly RatPoly::monic() const {
  if (is_zero()) throw std::invalid_argument("monic: zero polynomial");
  BigRat inv = 1 / lc();
  return scaled(inv);
}

std::pair<BigInt, IntPoly> RatPoly::clear_denominators() const {
  BigInt d = 1;
  for (const auto& a : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.get_den_mpz_t());
  std::vector<BigInt> v;
  v.reserve(c_.size());
  for (const auto& a : c_) {
    BigRat scaledv = a * BigRat(d);
    v.emplace_back(scaledv.get_num());
  }
  return {d, IntPoly(std::move(v))};
}

std::string RatPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    BigRat a = c_[i];
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    BigRat mag = abs(a);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) {
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::optional<IntPoly> exact_div(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("exact_div: zero divisor");
  if (f.is_zero()) return IntPoly();
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<BigInt> rem = f.coeffs();
  std::vector<BigInt> quo(f.degree() - g.degree() + 1, BigInt(0));
  int dg = g.degree();
  for (int i = f.degree(); i >= dg; --i) {
    BigInt& top = rem[i];
    if (top == 0) continue;
    // An integral quotient must have this exact leading coefficient.
    if (!mpz_divisible_p(top.get_mpz_t(), g.lc().get_mpz_t()))
      return std::nullopt;
    BigInt q = top / g.lc();
    quo[i - dg] = q;
    for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= q * g.coeff(j);
  }
  for (const auto& a : rem) {
    if (a != 0) return std::nullopt;
  }
  return IntPoly(std::move(quo));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("divmod: zero divisor");
  std::vector<BigRat> rem = f.coeffs();
  int dg = g.degree();
  if (f.degree() < dg) return {RatPoly(), f};
  std::vector<BigRat> quo(f.degree() - dg + 1, BigRat(0));
  for (int i = f.degree(); i >= dg; --i) {
    if (rem[i] == 0) continue;
    BigRat q = rem[i] / g.lc();
    quo[i - dg] = q;
    for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= q * g.coeff(j);
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("pseudo_rem: zero divisor");
  int df = f.degree(), dg = g.degree();
  if (df < dg) return f;
  std::vector<BigInt> rem = f.coeffs();
  const BigInt& b = g.lc();
  for (int i = df; i >= dg; --i) {
    // Scale the whole remainder once per step so divisions stay exact.
    BigInt top = rem[i];
    for (int j = 0; j <= i; ++j) rem[j] *= b;
    for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= top * g.coeff(j);
  }
  rem.resize(dg);
  // Each of the df-dg+1 elimination steps applied one factor of lc(g), so
  // this is exactly lc(g)^(df-dg+1) * f mod g.
  return IntPoly(std::move(rem));
}

IntPoly poly_gcd(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) return IntPoly();
  if (f.is_zero()) return g.lc() < 0 ? (-g) : g;
  if (g.is_zero()) return f.lc() < 0 ? (-f) : f;
  BigInt cont;
  mpz_gcd(cont.get_mpz_t(), f.content().get_mpz_t(), g.content().get_mpz_t());
  IntPoly a = f.primitive_part();
  IntPoly b = g.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b);
    a = b;
    b = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  IntPoly out = a.primitive_part().scaled(cont);
  if (out.lc() < 0) out = -out;
  return out;
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("resultant: zero polynomial rejected");
  IntPoly A = f, B = g;
  int swap_sign = 1;
  if (A.degree() < B.degree()) {
    if ((A.degree() * B.degree()) % 2 != 0) swap_sign = -1;
    std::swap(A, B);
  }
  if (B.degree() == 0) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), B.lc().get_mpz_t(),
               static_cast<unsigned long>(A.degree()));
    return swap_sign * out;
  }
  // Subresultant PRS (Cohen, Algorithm 3.3.7).
  BigInt ca = A.content(), cb = B.content();
  A = A.primitive_part();
  B = B.primitive_part();
  BigInt t, tb;
  mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(),
             static_cast<unsigned long>(B.degree()));
  mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(),
             static_cast<unsigned long>(A.degree()));
  t *= tb;
  BigInt gmul = 1, h = 1;
  int s = 1;
  while (true) {
    int da = A.degree(), db = B.degree();
    unsigned long delta = static_cast<unsigned long>(da - db);
    if (da % 2 == 1 && db % 2 == 1) s = -s;
    IntPoly R = pseudo_rem(A, B);
    if (R.is_zero()) return 0;  // common factor of positive degree
    A = B;
    BigInt hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), delta);
    BigInt denom = gmul * hd;
    {
      std::vector<BigInt> v = R.coeffs();
      for (auto& c : v) {
        if (!mpz_divisible_p(c.get_mpz_t(), denom.get_mpz_t()))
          throw std::logic_error("resultant: inexact subresultant division");
        c /= denom;
      }
      B = IntPoly(std::move(v));
    }
    gmul = A.lc();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = gmul;
    } else {
      BigInt gn, hr;
      mpz_pow_ui(gn.get_mpz_t(), gmul.get_mpz_t(), delta);
      mpz_pow_ui(hr.get_mpz_t(), h.get_mpz_t(), delta - 1);
      if (!mpz_divisible_p(gn.get_mpz_t(), hr.get_mpz_t()))
        throw std::logic_error("resultant: inexact h update");
      h = gn / hr;
    }
    if (B.degree() == 0) {
      unsigned long dA = static_cast<unsigned long>(A.degree());
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), B.lc().get_mpz_t(), dA);
      if (dA >= 1) {
        mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), dA - 1);
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
          throw std::logic_error("resultant: inexact final division");
        num /= den;
      }
      return BigInt(swap_sign * s) * t * num;
    }
  }
}

BigInt disc_oracle(const IntPoly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("disc_oracle: degree must be >= 1");
  if (d == 1) return 1;
  BigInt res = resultant(f, f.derivative());
  if (!mpz_divisible_p(res.get_mpz_t(), f.lc().get_mpz_t()))
    throw std::logic_error("disc_oracle: lc does not divide the resultant");
  BigInt out = res / f.lc();
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) out = -out;
  return out;
}

BigRat disc_oracle(const RatPoly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("disc_oracle: degree must be >= 1");
  auto [den, F] = f.clear_denominators();
  // disc(F / den) = disc(F) / den^(2d - 2).
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(),
             static_cast<unsigned long>(2 * d - 2));
  return make_rat(disc_oracle(F), scale);
}

namespace {

RatPoly gcd_monic(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero() && g.is_zero()) return RatPoly();
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  IntPoly a = f.clear_denominators().second;
  IntPoly b = g.clear_denominators().second;
  IntPoly d = poly_gcd(a, b);
  return RatPoly(d).monic();
}

RatPoly exact_quot(const RatPoly& f, const RatPoly& g) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) throw std::logic_error("exact_quot: nonzero remainder");
  return q;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const RatPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  RatPoly F = f.monic();
  RatPoly Fp = F.derivative();
  RatPoly g = gcd_monic(F, Fp);
  if (g.degree() == 0) {
    out.push_back({F, 1});
    return out;
  }
  // Yun's algorithm.
  RatPoly c = exact_quot(F, g);
  RatPoly d = exact_quot(Fp, g) - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    RatPoly a = gcd_monic(c, d);
    if (a.degree() > 0) out.push_back({a, i});
    c = exact_quot(c, a);
    d = exact_quot(d, a) - c.derivative();
    ++i;
  }
  return out;
}

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f) {
  return squarefree_decomposition(RatPoly(f));
}

int count_simple_roots(const RatPoly& f) {
  for (const auto& sf : squarefree_decomposition(f)) {
    if (sf.multiplicity == 1) return sf.factor.degree();
  }
  return 0;
}

int count_simple_roots(const IntPoly& f) {
  return count_simple_roots(RatPoly(f));
}

namespace {

// Rational roots of a squarefree integer polynomial, by the rational root
// theorem on divisors of the constant and leading coefficients.
std::optional<std::vector<BigRat>> rational_roots_squarefree(const IntPoly& f) {
  IntPoly g = f;
  std::vector<BigRat> roots;
  // Deflate x | g first.
  while (g.degree() > 0 && g.coeff(0) == 0) {
    roots.emplace_back(0);
    std::vector<BigInt> v(g.coeffs().begin() + 1, g.coeffs().end());
    g = IntPoly(std::move(v));
  }
  while (g.degree() > 0) {
    if (g.degree() == 1) {
      roots.push_back(make_rat(-g.coeff(0), g.coeff(1)));
      break;
    }
    bool found = false;
    // Candidate p/q with p | const and q | lc; degrees here are tiny.
    auto divisors = [](const BigInt& n) {
      FactorMap fm = factor(n);
      if (!fm.complete())
        throw capacity_error("rational roots: cannot enumerate divisors of " +
                                 decimal_digest(n),
                             0);
      std::vector<BigInt> out{1};
      for (const auto& f : fm.factors) {
        std::size_t base = out.size();
        BigInt pw = 1;
        for (unsigned long e = 1; e <= f.exponent; ++e) {
          pw *= f.prime;
          for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
        }
      }
      return out;
    };
    std::vector<BigInt> ps = divisors(abs(g.coeff(0)));
    std::vector<BigInt> qs = divisors(abs(g.lc()));
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (int sign : {1, -1}) {
          BigRat cand = make_rat(sign * p, q);
          if (g.evaluate(cand) == 0) {
            roots.push_back(cand);
            // Deflate by (q x - sign p).
            auto quot = exact_div(
                g, IntPoly(std::vector<BigInt>{BigInt(-sign * p), q}));
            if (!quot) {
              // Denominator not primitive against g; divide over Q instead.
              auto [qq, rr] = divmod(
                  RatPoly(g),
                  RatPoly(std::vector<BigRat>{-cand, BigRat(1)}));
              if (!rr.is_zero())
                throw std::logic_error("rational root deflation failed");
              g = qq.clear_denominators().second;
            } else {
              g = *quot;
            }
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;  // some factor is irrational
  }
  return roots;
}

}  // namespace

std::optional<std::vector<std::pair<BigRat, int>>> rational_roots_if_split(
    const IntPoly& f) {
  if (f.is_zero())
    throw std::invalid_argument("rational_roots_if_split: zero polynomial");
  std::vector<std::pair<BigRat, int>> out;
  if (f.degree() == 0) return out;
  for (const auto& sf : squarefree_decomposition(f)) {
    IntPoly part = sf.factor.clear_denominators().second;
    auto roots = rational_roots_squarefree(part);
    if (!roots) return std::nullopt;
    if (static_cast<int>(roots->size()) != part.degree()) return std::nullopt;
    for (const auto& r : *roots) out.emplace_back(r, sf.multiplicity);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

IntPoly iterate_poly(const IntPoly& f, int n, std::size_t degree_cap) {
  if (n < 0) throw std::invalid_argument("iterate_poly: negative n");
  if (f.degree() < 1)
    throw std::invalid_argument("iterate_poly: degree must be >= 1");
  IntPoly acc = IntPoly::x();
  std::size_t deg = 1;
  for (int i = 1; i <= n; ++i) {
    deg *= static_cast<std::size_t>(f.degree());
    if (deg > degree_cap) {
      throw capacity_error("iterate_poly: degree " + std::to_string(deg) +
                               " exceeds cap " + std::to_string(degree_cap),
                           i - 1);
    }
    acc = f.compose(acc);
  }
  return acc;
}

BigInt iterate_eval(const IntPoly& f, int n, const BigInt& x0) {
  BigInt v = x0;
  for (int i = 0; i < n; ++i) v = f.evaluate(v);
  return v;
}

BigRat iterate_eval(const IntPoly& f, int n, const BigRat& x0) {
  BigRat v = x0;
  for (int i = 0; i < n; ++i) v = f.evaluate(v);
  return v;
}

Trinomial::Trinomial(int d_, int s_, BigInt A_, BigInt B_)
    : d(d_), s(s_), A(std::move(A_)), B(std::move(B_)) {
  if (d < 3) throw std::invalid_argument("Trinomial: degree must be >= 3");
  if (s < 1 || s >= d) throw std::invalid_argument("Trinomial: need 1 <= s < d");
  if (A == 0 || B == 0)
    throw std::invalid_argument("Trinomial: A and B must be nonzero");
}

IntPoly Trinomial::poly() const {
  std::vector<BigInt> v(d + 1, BigInt(0));
  v[0] = B;
  v[s] = A;
  v[d] = 1;
  return IntPoly(std::move(v));
}

BigInt trinomial_disc_params(unsigned long d, unsigned long s, const BigInt& A,
                             const BigInt& B) {
  if (s < 1 || s >= d)
    throw std::invalid_argument("trinomial_disc: need 1 <= s < d");
  BigInt dd, Bds, dss, ss, Ad, Bs1;
  mpz_ui_pow_ui(dd.get_mpz_t(), d, d);
  mpz_pow_ui(Bds.get_mpz_t(), B.get_mpz_t(), d - s);
  mpz_ui_pow_ui(dss.get_mpz_t(), d - s, d - s);
  mpz_ui_pow_ui(ss.get_mpz_t(), s, s);
  mpz_pow_ui(Ad.get_mpz_t(), A.get_mpz_t(), d);
  mpz_pow_ui(Bs1.get_mpz_t(), B.get_mpz_t(), s - 1);
  BigInt inner = dd * Bds;
  BigInt second = dss * ss * Ad;
  if (d % 2 == 0) second = -second;  // (-1)^(d-1)
  inner += second;
  BigInt out = Bs1 * inner;
  if ((d * (d - 1) / 2) % 2 != 0) out = -out;
  return out;
}

BigInt trinomial_disc(const Trinomial& t) {
  return trinomial_disc_params(static_cast<unsigned long>(t.d),
                               static_cast<unsigned long>(t.s), t.A, t.B);
}

BigRat iterate_disc_formula(const IntPoly& f, int n, const BigRat& t) {
  int d = f.degree();
  if (d < 2) throw std::invalid_argument("iterate_disc_formula: degree >= 2");
  if (n < 1) throw std::invalid_argument("iterate_disc_formula: n >= 1");
  auto crit = rational_roots_if_split(f.derivative());
  if (!crit) {
    throw std::invalid_argument(
        "iterate_disc_formula: critical points are not all rational");
  }
  // D = d^n, kept small enough that the closed form stays materializable.
  BigInt D = 1;
  for (int i = 0; i < n; ++i) {
    D *= d;
    if (D > 6561)
      throw capacity_error("iterate_disc_formula: d^n too large", i);
  }
  unsigned long Dl = D.get_ui();
  BigRat acc(1);
  for (const auto& [b, e] : *crit) {
    BigRat v(b);
    for (int j = 1; j <= n; ++j) {
      v = f.evaluate(v);  // f^j(b)
      BigRat term = t - v;
      if (term == 0) return BigRat(0);
      // exponent d^(n-j) * e
      unsigned long ex = 1;
      for (int i = 0; i < n - j; ++i) ex *= static_cast<unsigned long>(d);
      ex *= static_cast<unsigned long>(e);
      BigRat tp;
      mpz_pow_ui(mpq_numref(tp.get_mpq_t()), term.get_num_mpz_t(), ex);
      mpz_pow_ui(mpq_denref(tp.get_mpq_t()), term.get_den_mpz_t(), ex);
      tp.canonicalize();
      acc *= tp;
    }
  }
  BigInt dpow;
  mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d),
                static_cast<unsigned long>(n) * Dl);
  BigInt lcpow;
  mpz_pow_ui(lcpow.get_mpz_t(), f.lc().get_mpz_t(),
             static_cast<unsigned long>((Dl - 1) / (d - 1)));
  acc *= BigRat(dpow * lcpow);
  // sign (-1)^((D-1)(D-2)/2)
  if (((Dl - 1) * (Dl - 2) / 2) % 2 != 0) acc = -acc;
  return acc;
}

std::vector<std::string> coeff_strings(const IntPoly& f) {
  std::vector<std::string> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(c.get_str());
  return out;
}

IntPoly poly_from_coeff_strings(const std::vector<std::string>& coeffs) {
  std::vector<BigInt> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) v.emplace_back(s);
  return IntPoly(std::move(v));
}

}  // namespace arbo
