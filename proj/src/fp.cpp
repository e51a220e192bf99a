#include "arbocert/fp.hpp"

#include <algorithm>
#include <numeric>

namespace arbo {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return acc;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid rather than Fermat: correct for any modulus, and a
  // non-invertible input fails loudly instead of yielding a false inverse.
  a %= p;
  if (a == 0) throw std::invalid_argument("invmod: not invertible");
  std::int64_t t = 0, nt = 1;
  std::uint64_t r = p, nr = a;
  while (nr != 0) {
    std::uint64_t q = r / nr;
    std::int64_t t2 = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = t2;
    std::uint64_t r2 = r - q * nr;
    r = nr;
    nr = r2;
  }
  if (r != 1) throw std::invalid_argument("invmod: not invertible");
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p))
               : static_cast<std::uint64_t>(t);
}

namespace {

void check_modulus(std::uint64_t p) {
  if (p < 2 || p >= kMaxFpModulus)
    throw std::invalid_argument("FpPoly: modulus out of range");
}

}  // namespace

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  check_modulus(p);
  for (auto& c : c_) c %= p_;
  normalize();
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::from_int_poly(const IntPoly& f, std::uint64_t p) {
  check_modulus(p);
  std::vector<std::uint64_t> v;
  v.reserve(f.coeffs().size());
  BigInt bp(static_cast<unsigned long>(p));
  for (const auto& c : f.coeffs()) {
    BigInt r = c % bp;
    if (r < 0) r += bp;
    v.push_back(r.get_ui());
  }
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t c) {
  return FpPoly(p, {c});
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<std::uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] = (v[i] + o.c_[i]) % p_;
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  std::vector<std::uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    v[i] = (v[i] + p_ - o.c_[i]) % p_;
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_, {});
  std::vector<std::uint64_t> v(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      v[i + j] = (v[i + j] + mulmod(c_[i], o.c_[j], p_)) % p_;
    }
  }
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::scaled(std::uint64_t k) const {
  std::vector<std::uint64_t> v = c_;
  for (auto& c : v) c = mulmod(c, k % p_, p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) throw std::invalid_argument("FpPoly::monic: zero polynomial");
  return scaled(invmod(lc(), p_));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_, {});
  std::vector<std::uint64_t> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    v[i - 1] = mulmod(c_[i], i % p_, p_);
  return FpPoly(p_, std::move(v));
}

std::uint64_t FpPoly::evaluate(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = (mulmod(acc, x, p_) + c_[i]) % p_;
  return acc;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& f, const FpPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("FpPoly divmod: zero divisor");
  std::uint64_t p = g.modulus();
  int dg = g.degree();
  if (f.degree() < dg) return {FpPoly(p, {}), f};
  std::vector<std::uint64_t> rem = f.coeffs();
  std::vector<std::uint64_t> quo(f.degree() - dg + 1, 0);
  std::uint64_t inv_lc = invmod(g.lc(), p);
  for (int i = f.degree(); i >= dg; --i) {
    if (rem[i] == 0) continue;
    std::uint64_t q = mulmod(rem[i], inv_lc, p);
    quo[i - dg] = q;
    for (int j = 0; j <= dg; ++j) {
      rem[i - dg + j] =
          (rem[i - dg + j] + p - mulmod(q, g.coeff(j), p)) % p;
    }
  }
  return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
}

FpPoly gcd(const FpPoly& f, const FpPoly& g) {
  FpPoly a = f, b = g;
  while (!b.is_zero()) {
    FpPoly r = divmod(a, b).second;
    if (!r.is_zero() && r.degree() >= b.degree())
      throw std::invalid_argument("FpPoly gcd: remainder degree did not drop");
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

FpPoly powmod_poly(const FpPoly& base, const BigInt& e, const FpPoly& m) {
  if (e < 0) throw std::invalid_argument("powmod_poly: negative exponent");
  FpPoly acc = FpPoly::constant(base.modulus(), 1);
  FpPoly b = divmod(base, m).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (std::size_t i = bits; i-- > 0;) {
    acc = divmod(acc * acc, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = divmod(acc * b, m).second;
  }
  return acc;
}

bool is_squarefree(const FpPoly& f) {
  if (f.is_zero()) return false;
  if (f.degree() == 0) return true;
  FpPoly d = f.derivative();
  if (d.is_zero()) return false;  // p-th power
  return gcd(f, d).degree() == 0;
}

namespace {

// Splitmix-style generator; decoupled from std:: so runs are reproducible
// across platforms.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

FpPoly random_poly_below(Rng& rng, std::uint64_t p, int deg_bound) {
  std::vector<std::uint64_t> v(deg_bound);
  for (auto& c : v) c = rng.next() % p;
  return FpPoly(p, std::move(v));
}

// f monic squarefree, a product of irreducibles all of degree k. Splits
// completely via Cantor-Zassenhaus.
void equal_degree_split(const FpPoly& f, int k, Rng& rng,
                        std::vector<FpPoly>& out) {
  if (f.degree() == k) {
    out.push_back(f);
    return;
  }
  std::uint64_t p = f.modulus();
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(k));
  BigInt half = (pk - 1) / 2;
  while (true) {
    FpPoly u = random_poly_below(rng, p, f.degree());
    if (u.degree() < 1) continue;
    FpPoly d = gcd(u, f);
    if (d.degree() > 0 && d.degree() < f.degree()) {
      equal_degree_split(d, k, rng, out);
      equal_degree_split(divmod(f, d).first, k, rng, out);
      return;
    }
    FpPoly w = powmod_poly(u, half, f);
    w = w - FpPoly::constant(p, 1);
    FpPoly g = gcd(w, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, k, rng, out);
      equal_degree_split(divmod(f, g).first, k, rng, out);
      return;
    }
  }
}

// Distinct-degree stage: (degree, product-of-that-degree) pairs for monic
// squarefree f.
std::vector<std::pair<int, FpPoly>> distinct_degree(const FpPoly& f) {
  std::uint64_t p = f.modulus();
  std::vector<std::pair<int, FpPoly>> out;
  FpPoly rest = f;
  FpPoly h = FpPoly::x(p);  // x^(p^i) mod f, advanced per stage
  int i = 0;
  while (rest.degree() > 0) {
    ++i;
    if (2 * i > rest.degree()) {
      out.emplace_back(rest.degree(), rest);
      break;
    }
    h = powmod_poly(h, BigInt(static_cast<unsigned long>(p)), rest);
    FpPoly g = gcd(h - FpPoly::x(p), rest);
    if (g.degree() > 0) {
      out.emplace_back(i, g);
      rest = divmod(rest, g).first;
      h = divmod(h, rest).second;
    }
  }
  return out;
}

// Squarefree decomposition in characteristic p (handles f' = 0 via p-th
// roots, which are coefficient-preserving over F_p).
std::vector<std::pair<FpPoly, int>> fp_squarefree_decomposition(
    const FpPoly& f, int mult_scale) {
  std::vector<std::pair<FpPoly, int>> out;
  std::uint64_t p = f.modulus();
  if (f.degree() <= 0) return out;
  FpPoly fd = f.derivative();
  if (fd.is_zero()) {
    // f = g(x^p) = g(x)^p over F_p.
    if (static_cast<std::uint64_t>(f.degree()) % p != 0)
      throw std::logic_error("fp squarefree: zero derivative, bad degree");
    std::vector<std::uint64_t> v;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); i += p)
      v.push_back(f.coeff(i));
    return fp_squarefree_decomposition(FpPoly(p, std::move(v)),
                                       mult_scale * static_cast<int>(p));
  }
  FpPoly g = gcd(f, fd);
  FpPoly w = divmod(f, g).first;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, g);
    FpPoly z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(z, i * mult_scale);
    w = y;
    g = divmod(g, y).first;
    ++i;
  }
  if (g.degree() > 0) {
    auto rest = fp_squarefree_decomposition(g, mult_scale);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace

std::vector<FpFactor> fp_factor(const FpPoly& f, std::uint64_t seed) {
  std::uint64_t p = f.modulus();
  if (p == 2)
    throw std::invalid_argument(
        "fp_factor: characteristic 2 is rejected by configuration");
  if (!is_prime(BigInt(static_cast<unsigned long>(p))))
    throw std::invalid_argument("fp_factor: modulus must be prime");
  if (f.is_zero()) throw std::invalid_argument("fp_factor: zero polynomial");
  std::vector<FpFactor> out;
  if (f.degree() == 0) return out;
  Rng rng{seed};
  FpPoly work = f.monic();
  for (const auto& [sf, mult] : fp_squarefree_decomposition(work, 1)) {
    for (const auto& [deg, prod] : distinct_degree(sf.monic())) {
      std::vector<FpPoly> irr;
      equal_degree_split(prod.monic(), deg, rng, irr);
      for (auto& h : irr) out.push_back({h, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.factor.degree() != b.factor.degree())
      return a.factor.degree() < b.factor.degree();
    return a.factor.coeffs() < b.factor.coeffs();
  });
  return out;
}

std::vector<int> irreducible_degrees(const FpPoly& f) {
  if (!is_squarefree(f))
    throw std::invalid_argument("irreducible_degrees: input not squarefree");
  std::vector<int> out;
  for (const auto& [deg, prod] : distinct_degree(f.monic())) {
    for (int c = 0; c < prod.degree() / deg; ++c) out.push_back(deg);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::optional<std::vector<int>> frobenius_cycle_type(const IntPoly& f,
                                                     std::uint64_t p) {
  if (f.is_zero()) throw std::invalid_argument("frobenius_cycle_type: zero");
  BigInt bp(static_cast<unsigned long>(p));
  if (mpz_divisible_p(f.lc().get_mpz_t(), bp.get_mpz_t())) return std::nullopt;
  FpPoly fp = FpPoly::from_int_poly(f, p);
  if (!is_squarefree(fp)) return std::nullopt;
  return irreducible_degrees(fp);
}

ShapeResult shape_check(const Trinomial& t, std::uint64_t p) {
  if (std::gcd(t.d, t.s) != 1)
    throw std::invalid_argument("shape_check: requires gcd(d, s) = 1");
  if (p < 2 || p >= kMaxFpModulus)
    throw std::invalid_argument("shape_check: prime out of range");
  BigInt bp(static_cast<unsigned long>(p));
  if (!is_prime(bp)) throw std::invalid_argument("shape_check: p not prime");

  ShapeResult out;
  BigInt delta = trinomial_disc(t);
  if (!mpz_divisible_p(delta.get_mpz_t(), bp.get_mpz_t())) {
    out.kind = ShapeKind::Unramified;
    return out;
  }
  long d = t.d, s = t.s;
  auto divides = [&bp](const BigInt& v) {
    return mpz_divisible_p(v.get_mpz_t(), bp.get_mpz_t()) != 0;
  };
  if (divides(t.A) || divides(t.B)) {
    out.kind = ShapeKind::HypothesisViolated;
    out.violated = "p | AB";
    return out;
  }
  if (divides(BigInt(d)) || divides(BigInt(s)) || divides(BigInt(d - s))) {
    out.kind = ShapeKind::HypothesisViolated;
    out.violated = "p | ds(d-s)";
    return out;
  }

  auto red = [&](const BigInt& v) {
    BigInt r = v % bp;
    if (r < 0) r += bp;
    return r.get_ui();
  };
  std::uint64_t A = red(t.A), B = red(t.B);
  std::uint64_t dm = red(BigInt(d)), sm = red(BigInt(s)),
                dsm = red(BigInt(d - s));
  // eta^(d-s) = -sA/d, eta^s = -dB/((d-s)A); combine via Bezout since
  // gcd(s, d-s) = gcd(s, d) = 1.
  std::uint64_t u = mulmod(p - mulmod(sm, A, p), invmod(dm, p), p);
  std::uint64_t v =
      mulmod(p - mulmod(dm, B, p), invmod(mulmod(dsm, A, p), p), p);
  BezoutTriple bz = bezout(BigInt(s), BigInt(d - s));
  if (bz.g != 1) throw std::logic_error("shape_check: bezout degenerate");
  auto pow_signed = [&](std::uint64_t base, const BigInt& e) {
    BigInt ab = abs(e);
    std::uint64_t r = powmod(base, ab.get_ui(), p);
    return e < 0 ? invmod(r, p) : r;
  };
  std::uint64_t eta = mulmod(pow_signed(v, bz.x), pow_signed(u, bz.y), p);

  FpPoly f = FpPoly::from_int_poly(t.poly(), p);
  if (f.evaluate(eta) != 0 || f.derivative().evaluate(eta) != 0)
    throw std::logic_error("shape_check: eta is not a double root");
  std::uint64_t minus_eta = (p - eta) % p;
  FpPoly lin(p, {minus_eta, 1});
  auto [q1, r1] = divmod(f, lin);
  auto [cof, r2] = divmod(q1, lin);
  if (!r1.is_zero() || !r2.is_zero())
    throw std::logic_error("shape_check: (x - eta)^2 does not divide f");
  if (cof.evaluate(eta) == 0)
    throw std::logic_error("shape_check: eta has multiplicity > 2");
  if (!is_squarefree(cof))
    throw std::logic_error("shape_check: cofactor not separable");
  out.kind = ShapeKind::RamifiedShape;
  out.eta = eta;
  out.cofactor_degrees = irreducible_degrees(cof);
  return out;
}

}  // namespace arbo
