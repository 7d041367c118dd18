#include "rookwalk/algebra/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rookwalk {

Poly::Poly(std::vector<BigInt> coeffs, std::string var) : coeffs_(std::move(coeffs)), var_(std::move(var)) {
  trim();
}

Poly Poly::constant(const BigInt& c, std::string var) { return Poly({c}, std::move(var)); }

Poly Poly::monomial(const BigInt& c, int k, std::string var) {
  std::vector<BigInt> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Poly(std::move(v), std::move(var));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

BigInt Poly::leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

BigInt Poly::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

BigRat Poly::operator()(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  acc.canonicalize();
  return acc;
}

Poly Poly::shifted(long s) const {
  // Horner in the shifted variable: p(x+s) = (...(c_d (x+s) + c_{d-1})(x+s) ...)
  std::vector<BigInt> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<BigInt> next(acc.size() + 1);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] += acc[k] * s;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return Poly(std::move(acc), var_);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Poly(std::move(v), a.var_);
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly({}, a.var_);
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(v), a.var_);
}

Poly operator*(const BigInt& c, const Poly& p) {
  std::vector<BigInt> v = p.coeffs_;
  for (auto& x : v) x *= c;
  return Poly(std::move(v), p.var_);
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || a != 1) os << a;
    if (k > 0) {
      if (a != 1) os << "*";
      os << var_;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

BigRat poly_eval(const Poly& p, const BigRat& x) { return p(x); }

BigInt content(const Poly& p) { return content(p.coeffs()); }

namespace {

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<BigInt> v = p.coeffs();
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return Poly(std::move(v), p.var());
}

// Pseudo-remainder of a by b (b nonzero).
Poly pseudo_rem(Poly a, const Poly& b) {
  const int db = b.degree();
  const BigInt lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    BigInt la = a.leading();
    a = lb * a - Poly::monomial(la, shift, a.var()) * b;
  }
  return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = primitive_part(a);
  Poly y = primitive_part(b);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  BigInt cg;
  {
    BigInt ca = content(a), cb = content(b);
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  }
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = primitive_part(pseudo_rem(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return cg * primitive_part(x);
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_quotient: division by zero polynomial");
  std::vector<BigInt> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) {
    if (a.is_zero()) return Poly({}, a.var());
    throw std::invalid_argument("exact_quotient: divisor does not divide");
  }
  std::vector<BigInt> q(static_cast<std::size_t>(da - db) + 1);
  const BigInt lb = b.leading();
  for (int k = da - db; k >= 0; --k) {
    BigInt& top = rem[static_cast<std::size_t>(k + db)];
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
      throw std::invalid_argument("exact_quotient: divisor does not divide");
    BigInt c = top / lb;
    q[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::invalid_argument("exact_quotient: divisor does not divide");
  return Poly(std::move(q), a.var());
}

namespace {

long double to_long_double(const BigInt& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

}  // namespace

std::vector<std::complex<long double>> approximate_roots(const Poly& p) {
  using C = std::complex<long double>;
  const int n = p.degree();
  std::vector<C> roots;
  if (n < 1) return roots;
  std::vector<long double> a(static_cast<std::size_t>(n) + 1);
  const long double lead = to_long_double(p.leading());
  for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = to_long_double(p.coeffs()[static_cast<std::size_t>(i)]) / lead;
  // Fujiwara-style radius for the starting circle.
  long double radius = 0;
  for (int i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::fabs(a[static_cast<std::size_t>(i)]), 1.0L / (n - i)));
  radius = std::max(radius, 1e-3L);
  for (int k = 0; k < n; ++k) roots.push_back(std::polar(radius, 2 * std::numbers::pi_v<long double> * k / n + 0.4L));
  for (int iter = 0; iter < 2000; ++iter) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      C z = roots[static_cast<std::size_t>(k)];
      C f = 1, df = 0;
      for (int i = n - 1; i >= 0; --i) {
        df = df * z + f;
        f = f * z + a[static_cast<std::size_t>(i)];
      }
      if (f == C(0)) continue;
      C w = f / df;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z - roots[static_cast<std::size_t>(j)]);
      C corr = w / (1.0L - w * s);
      roots[static_cast<std::size_t>(k)] = z - corr;
      moved = std::max(moved, std::abs(corr) / (1 + std::abs(z)));
    }
    if (moved < 1e-17L) break;
  }
  return roots;
}

namespace {

long sign_variations(const std::vector<BigInt>& a) {
  long v = 0;
  int last = 0;
  for (const auto& c : a) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// a(x + 1), in place.
void taylor_shift_one(std::vector<BigInt>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) a[j] += a[j + 1];
}

struct Interval {
  BigRat lo, hi;
  bool exact;
};

// Real roots of a square-free a in (0, 1); interval (c / 2^k, (c + 1) / 2^k).
void isolate_unit(std::vector<BigInt> a, const BigInt& c, unsigned long k, std::vector<Interval>& out) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
  if (!a.empty() && a.front() == 0) {
    out.push_back({make_rat(c, scale), make_rat(c, scale), true});
    a.erase(a.begin());
  }
  if (a.size() < 2) return;
  std::vector<BigInt> t(a.rbegin(), a.rend());
  taylor_shift_one(t);
  const long v = sign_variations(t);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({make_rat(c, scale), make_rat(c + 1, scale), false});
    return;
  }
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) mpz_mul_2exp(a[i].get_mpz_t(), a[i].get_mpz_t(), n - i);
  std::vector<BigInt> right = a;
  taylor_shift_one(right);
  isolate_unit(std::move(a), 2 * c, k + 1, out);
  // The midpoint itself shows up as a zero constant term on the right.
  isolate_unit(std::move(right), 2 * c + 1, k + 1, out);
}

BigRat floor_rat(const BigRat& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return BigRat(q);
}

// Fraction with the smallest denominator in [lo, hi], 0 < lo <= hi.
BigRat simplest_between(const BigRat& lo, const BigRat& hi) {
  const BigRat f = floor_rat(lo);
  if (f == lo) return lo;
  if (f + 1 <= hi) return f + 1;
  return f + 1 / simplest_between(1 / (hi - f), 1 / (lo - f));
}

// Positive rational roots of a square-free integer polynomial.
std::vector<BigRat> positive_rational_roots(const Poly& p) {
  std::vector<BigRat> roots;
  std::vector<BigInt> a = p.coeffs();
  while (!a.empty() && a.front() == 0) a.erase(a.begin());
  if (a.size() < 2) return roots;
  // All roots lie below 2^e (Cauchy bound); map them into (0, 1).
  std::size_t top = 0;
  for (const auto& c : a) top = std::max(top, mpz_sizeinbase(c.get_mpz_t(), 2));
  const unsigned long e = top - mpz_sizeinbase(a.back().get_mpz_t(), 2) + 2;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_mul_2exp(a[i].get_mpz_t(), a[i].get_mpz_t(), e * i);
  std::vector<Interval> found;
  isolate_unit(a, 0, 0, found);
  BigInt lead = abs(p.leading()), scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, e);
  // A rational root b/q has q | lead, and distinct fractions with denominators
  // up to lead are more than 1 / lead^2 apart.
  const BigRat width = make_rat(1, 2 * lead * lead);
  std::vector<BigInt> dv;
  for (int k = 1; k <= p.degree(); ++k) dv.push_back(k * p.coeffs()[static_cast<std::size_t>(k)]);
  const Poly derivative(std::move(dv), p.var());
  for (auto iv : found) {
    BigRat lo = iv.lo * scale, hi = iv.hi * scale;
    if (iv.exact) {
      roots.push_back(lo);
      continue;
    }
    // Just right of lo; an endpoint may itself be a (simple) root.
    int slo = sgn(poly_eval(p, lo));
    if (slo == 0) slo = sgn(poly_eval(derivative, lo));
    while (hi - lo > width) {
      BigRat mid = (lo + hi) / 2;
      const int s = sgn(poly_eval(p, mid));
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == slo ? lo : hi) = mid;
    }
    BigRat cand = simplest_between(lo, hi);
    if (lead % cand.get_den() == 0 && poly_eval(p, cand) == 0) roots.push_back(cand);
  }
  return roots;
}

}  // namespace

std::vector<BigRat> rational_roots(const Poly& p) {
  std::vector<BigRat> roots;
  if (p.degree() < 1) return roots;
  std::vector<BigInt> dv;
  for (int k = 1; k <= p.degree(); ++k) dv.push_back(k * p.coeffs()[static_cast<std::size_t>(k)]);
  const Poly squarefree = exact_quotient(p, poly_gcd(p, Poly(std::move(dv), p.var())));
  if (squarefree.coeff(0) == 0) roots.push_back(BigRat(0));
  for (const auto& r : positive_rational_roots(squarefree)) roots.push_back(r);
  std::vector<BigInt> neg = squarefree.coeffs();
  for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
  for (const auto& r : positive_rational_roots(Poly(std::move(neg), p.var()))) roots.push_back(-r);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

LinearSplit split_linear_factors(const Poly& p) {
  LinearSplit out;
  out.content = content(p);
  if (p.is_zero()) return out;
  if (p.leading() < 0) out.content = -out.content;
  std::vector<BigInt> v = p.coeffs();
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), out.content.get_mpz_t());
  Poly rest(std::move(v), p.var());
  for (const auto& root : rational_roots(rest)) {
    const Poly f({-root.get_num(), root.get_den()}, p.var());
    int mult = 0;
    while (rest.degree() >= 1 && poly_eval(rest, root) == 0) rest = exact_quotient(rest, f), ++mult;
    out.linear.emplace_back(f, mult);
  }
  out.cofactor = rest;
  return out;
}

void BiPoly::set(int i, int j, const BigInt& c) {
  if (c == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = c;
}

BigInt BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? BigInt(0) : it->second;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

namespace {

// Horner in x over inner Horner polynomials in y; T is BigInt or BigRat.
template <class T>
T bipoly_horner(const std::map<BiPoly::Key, BigInt>& terms, const T& x, const T& y) {
  if (terms.empty()) return T(0);
  const int top = terms.rbegin()->first.first;
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(top) + 1);
  for (const auto& [k, c] : terms) {
    auto& row = rows[static_cast<std::size_t>(k.first)];
    if (row.size() <= static_cast<std::size_t>(k.second)) row.resize(static_cast<std::size_t>(k.second) + 1);
    row[static_cast<std::size_t>(k.second)] = c;
  }
  T acc = 0;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    T inner = 0;
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) {
      inner *= y;
      inner += *jt;
    }
    acc *= x;
    acc += inner;
  }
  return acc;
}

}  // namespace

BigRat BiPoly::operator()(const BigRat& x, const BigRat& y) const {
  BigRat r = bipoly_horner<BigRat>(terms_, x, y);
  r.canonicalize();
  return r;
}

BigInt BiPoly::operator()(const BigInt& x, const BigInt& y) const { return bipoly_horner<BigInt>(terms_, x, y); }

BigRat bipoly_eval(const BiPoly& p, const BigRat& x, const BigRat& y) { return p(x, y); }

}  // namespace rookwalk
