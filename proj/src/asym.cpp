#include "rookwalk/asym.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

#include "rookwalk/error.hpp"

namespace rookwalk::asym {

namespace {

BigRat rat_pow(const BigRat& x, unsigned long e) {
  BigRat out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return out;
}

BigInt int_pow(long base, unsigned long e) {
  BigInt out;
  if (base >= 0) {
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  } else {
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(-base), e);
    if (e % 2) out = -out;
  }
  return out;
}

// binom(x, m) for rational x.
BigRat binom(const BigRat& x, int m) {
  BigRat out = 1;
  for (int j = 0; j < m; ++j) out *= (x - j) / BigRat(j + 1);
  return out;
}

std::string describe_roots(const Poly& chi) {
  std::ostringstream os;
  os.precision(8);
  bool first = true;
  for (const auto& z : approximate_roots(chi)) {
    os << (first ? "" : ", ") << static_cast<double>(z.real());
    if (z.imag() != 0) os << (z.imag() > 0 ? "+" : "") << static_cast<double>(z.imag()) << "i";
    first = false;
  }
  return os.str();
}

// All roots of q strictly inside the unit circle (Schur-Cohn, exact).
bool inside_unit_disk(std::vector<BigInt> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() > 1) {
    const std::size_t m = a.size() - 1;
    if (abs(a[0]) >= abs(a[m])) return false;
    std::vector<BigInt> b(m);
    for (std::size_t k = 0; k < m; ++k) b[k] = a[m] * a[k + 1] - a[0] * a[m - 1 - k];
    const BigInt g = content(b);
    for (auto& x : b) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    a = std::move(b);
  }
  return !a.empty();
}

struct Characteristic {
  int degree = 0;
  Poly chi;
  BigRat lambda;
  BigRat lambda_dchi;  // lambda chi'(lambda)
};

Characteristic dominant_root(const guess::Recurrence& rec) {
  Characteristic ch;
  ch.degree = rec.degree();
  std::vector<BigInt> lc;
  for (const auto& p : rec.coeffs) lc.push_back(p.coeff(ch.degree));
  ch.chi = Poly(lc);
  if (ch.chi.degree() < 1) throw Error("unsupported-case", "characteristic polynomial is constant");
  const auto roots = rational_roots(ch.chi);
  auto unsupported = [&](const std::string& why) {
    return Error("unsupported-case", why + "; characteristic roots: " + describe_roots(ch.chi));
  };
  if (roots.empty()) throw unsupported("no rational characteristic root");
  BigRat best = roots.front();
  for (const auto& r : roots)
    if (abs(r) > abs(best) || (abs(r) == abs(best) && r > best)) best = r;
  if (best <= 0) throw unsupported("largest rational root is not positive");
  ch.lambda = best;

  BigRat dchi = 0;
  for (int i = 1; i <= ch.chi.degree(); ++i) dchi += BigRat(i * ch.chi.coeffs()[static_cast<std::size_t>(i)]) * rat_pow(best, i - 1);
  if (dchi == 0) throw unsupported("dominant root is not simple");
  ch.lambda_dchi = best * dchi;

  // chi(lambda z) / (z - 1) must have every root inside the unit circle.
  std::vector<BigRat> scaled;
  for (int i = 0; i <= ch.chi.degree(); ++i) scaled.push_back(BigRat(ch.chi.coeffs()[static_cast<std::size_t>(i)]) * rat_pow(best, i));
  std::vector<BigRat> q(scaled.size() - 1);
  BigRat carry = 0;
  for (std::size_t k = scaled.size() - 1; k-- > 0;) {
    carry += scaled[k + 1];
    q[k] = carry;
  }
  BigInt den = 1;
  for (const auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> qi;
  for (const auto& x : q) qi.push_back(x.get_num() * (den / x.get_den()));
  if (!inside_unit_disk(qi)) throw unsupported("dominant root is not unique in modulus");
  return ch;
}

// Coefficient of t^s in the ansatz substituted into the recurrence.
BigRat coefficient_at(const guess::Recurrence& rec, int D, const BigRat& lambda, const BigRat& theta,
                      const std::vector<BigRat>& c, int s) {
  BigRat total = 0;
  for (int i = 0; i <= rec.order(); ++i) {
    const Poly& p = rec.coeffs[static_cast<std::size_t>(i)];
    BigRat inner = 0;
    for (int k = 0; k <= s; ++k) {
      const BigRat ck = k == 0 ? BigRat(1) : (k <= static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k - 1)] : BigRat(0));
      if (ck == 0) continue;
      for (int a = 0; a + k <= s && a <= D; ++a) {
        const BigInt pa = p.coeff(D - a);
        if (pa == 0) continue;
        const int m = s - a - k;
        inner += BigRat(pa) * ck * binom(theta - k, m) * BigRat(int_pow(i, static_cast<unsigned long>(m)));
      }
    }
    total += rat_pow(lambda, static_cast<unsigned long>(i)) * inner;
  }
  return total;
}

// RAII wrapper for an mpfr_t.
struct Real {
  mpfr_t v;
  explicit Real(int prec) { mpfr_init2(v, prec); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

std::string decimal(const mpfr_t x, mpfr_rnd_t rnd, int prec) {
  const std::size_t digits = static_cast<std::size_t>(prec * 0.30103) + 2;
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, x, rnd);
  std::string m = s;
  mpfr_free_str(s);
  std::string sign;
  if (!m.empty() && m[0] == '-') sign = "-", m.erase(0, 1);
  if (mpfr_zero_p(x)) return "0";
  // m = 0.d1d2... * 10^e
  std::string out = sign + m.substr(0, 1) + "." + m.substr(1);
  return out + "e" + std::to_string(static_cast<long>(e) - 1);
}

Enclosure make_enclosure(const mpfr_t lo, const mpfr_t hi, int prec) {
  Enclosure out;
  out.precision_bits = prec;
  out.lo = decimal(lo, MPFR_RNDD, prec);
  out.hi = decimal(hi, MPFR_RNDU, prec);
  Real a(prec), b(prec);
  mpfr_sub_ui(a.v, hi, 1, MPFR_RNDU);
  mpfr_ui_sub(b.v, 1, lo, MPFR_RNDU);
  mpfr_max(a.v, a.v, b.v, MPFR_RNDU);
  out.deviation = mpfr_get_d(a.v, MPFR_RNDU);
  if (mpfr_cmp_ui(lo, 1) > 0) {
    mpfr_sub_ui(a.v, lo, 1, MPFR_RNDD);
    out.distance_lo = mpfr_get_d(a.v, MPFR_RNDD);
  } else if (mpfr_cmp_ui(hi, 1) < 0) {
    mpfr_ui_sub(a.v, 1, hi, MPFR_RNDD);
    out.distance_lo = mpfr_get_d(a.v, MPFR_RNDD);
  }
  return out;
}

void check_precision(int precision_bits) {
  if (precision_bits < 64) throw Error("invalid-argument", "precision must be at least 64 bits");
}

void check_width(const mpfr_t lo, const mpfr_t hi, int prec) {
  Real w(prec);
  mpfr_sub(w.v, hi, lo, MPFR_RNDU);
  if (mpfr_cmp_si_2exp(w.v, 1, -prec / 2) > 0)
    throw Error("insufficient-precision", "enclosure wider than 2^-" + std::to_string(prec / 2) + " at " +
                                              std::to_string(prec) + " bits");
}

}  // namespace

BigInt LeadingConstant::base() const { return int_pow(dim + 1, static_cast<unsigned long>(dim)); }

std::string LeadingConstant::describe() const {
  return "sqrt(" + to_string(alpha) + ") * (n*pi)^((1-" + std::to_string(dim) + ")/2) * (" + base().get_str() + ")^n";
}

LeadingConstant leading_constant(int d) {
  if (d < 1) throw Error("invalid-argument", "dimension must be positive");
  const auto ud = static_cast<unsigned long>(d);
  LeadingConstant out;
  out.dim = d;
  out.alpha = make_rat(int_pow(d, ud + 2), int_pow(d + 2, ud - 1) * int_pow(d + 1, 2) * int_pow(2, ud - 1));
  return out;
}

AsymptoticExpansion birkhoff_expand(const guess::Recurrence& rec, int K) {
  if (K < 1) throw Error("invalid-argument", "expansion order must be positive");
  if (rec.order() < 1) throw Error("invalid-argument", "recurrence order must be positive");
  const Characteristic ch = dominant_root(rec);
  const int D = ch.degree;
  AsymptoticExpansion e;
  e.lambda = ch.lambda;
  BigRat q = 0;
  for (int i = 0; i <= rec.order(); ++i)
    q += BigRat(rec.coeffs[static_cast<std::size_t>(i)].coeff(D - 1)) * rat_pow(ch.lambda, static_cast<unsigned long>(i));
  e.theta = -q / ch.lambda_dchi;
  // The t^(k+1) balance is linear in c_k with coefficient -k lambda chi'(lambda).
  for (int k = 1; k <= K; ++k) {
    e.c.push_back(0);
    const BigRat rest = coefficient_at(rec, D, e.lambda, e.theta, e.c, k + 1);
    e.c.back() = rest / (BigRat(k) * ch.lambda_dchi);
  }
  return e;
}

std::vector<BigRat> expansion_residuals(const guess::Recurrence& rec, const AsymptoticExpansion& e, int s_max) {
  std::vector<BigRat> out;
  for (int s = 0; s <= s_max; ++s) out.push_back(coefficient_at(rec, rec.degree(), e.lambda, e.theta, e.c, s));
  return out;
}

BigRat symbolic_c(int k, int d) {
  if (d < 2) throw Error("invalid-argument", "symbolic coefficients need d >= 2");
  const BigInt D = d;
  if (k == 1) {
    const BigInt num = (D - 1) * (D + 1) * (D * D * D + 6 * D * D + 18 * D + 12);
    const BigInt den = 12 * D * (D + 2) * (D + 2) * (D + 2);
    return make_rat(-num, den);
  }
  if (k == 2) {
    BigInt poly = 0;
    for (long c : {1L, 11L, 60L, 168L, -108L, -564L, -1632L, -1584L, -576L}) poly = poly * D + c;
    const BigInt num = (D - 1) * (D + 1) * (D + 1) * poly;
    const BigInt den = 288 * D * D * D * int_pow(d + 2, 6);
    return make_rat(num, den);
  }
  throw Error("invalid-argument", "closed forms exist for k = 1, 2 only");
}

Enclosure ratio_check(const guess::Sequence& terms, const AsymptoticExpansion& e, const LeadingConstant& constant,
                      long n, int precision_bits) {
  check_precision(precision_bits);
  if (!terms.covers(n)) throw Error("invalid-argument", "terms do not cover index " + std::to_string(n));
  if (n < 1) throw Error("invalid-argument", "ratio needs n >= 1");
  if (e.lambda != BigRat(constant.base()) || e.theta != constant.theta())
    throw Error("mismatch", "expansion lambda/theta differ from the leading constant's " + constant.base().get_str() +
                                "^n n^" + to_string(constant.theta()));
  const BigInt& a = terms.at(n);
  if (a <= 0) throw Error("invalid-argument", "term must be positive");
  const auto un = static_cast<unsigned long>(n);
  BigRat s = 1;
  for (int k = 1; k <= e.order(); ++k) s += e.c[static_cast<std::size_t>(k - 1)] / BigRat(int_pow(n, static_cast<unsigned long>(k)));
  if (s <= 0) throw Error("invalid-argument", "truncated series is not positive at n=" + std::to_string(n));

  // ratio^2 = alpha n^(1-d) lambda^(2n) s^2 / a^2 * pi^(1-d); only pi and sqrt round.
  const int d = constant.dim;
  BigRat x = constant.alpha * s * s * rat_pow(e.lambda, 2 * un) / BigRat(a * a);
  x /= BigRat(int_pow(n, static_cast<unsigned long>(d - 1)));
  const int prec = precision_bits + 32;
  Real lo(prec), hi(prec), pi(prec);
  mpfr_set_q(lo.v, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.v, x.get_mpq_t(), MPFR_RNDU);
  mpfr_const_pi(pi.v, MPFR_RNDU);
  mpfr_pow_ui(pi.v, pi.v, static_cast<unsigned long>(d - 1), MPFR_RNDU);
  mpfr_div(lo.v, lo.v, pi.v, MPFR_RNDD);
  mpfr_const_pi(pi.v, MPFR_RNDD);
  mpfr_pow_ui(pi.v, pi.v, static_cast<unsigned long>(d - 1), MPFR_RNDD);
  mpfr_div(hi.v, hi.v, pi.v, MPFR_RNDU);
  mpfr_sqrt(lo.v, lo.v, MPFR_RNDD);
  mpfr_sqrt(hi.v, hi.v, MPFR_RNDU);
  check_width(lo.v, hi.v, precision_bits);
  return make_enclosure(lo.v, hi.v, precision_bits);
}

std::string FixedNAsymptotic::describe() const {
  return "e^" + std::to_string(e_power) + " * " + rational_part.get_str();
}

FixedNAsymptotic fixedn_asym(int n, int d) {
  if (n < 0 || d < 1) throw Error("invalid-argument", "need n >= 0 and d >= 1");
  FixedNAsymptotic f;
  f.n = n;
  f.d = d;
  if (n == 0) {
    f.rational_part = 1;
    return f;
  }
  f.e_power = n - 1;
  BigInt nf = factorial(static_cast<unsigned long>(n)), den;
  mpz_pow_ui(den.get_mpz_t(), nf.get_mpz_t(), static_cast<unsigned long>(d));
  f.rational_part = factorial(static_cast<unsigned long>(n) * static_cast<unsigned long>(d)) / den;
  return f;
}

namespace {

void fixedn_bounds(const FixedNAsymptotic& f, mpfr_t lo, mpfr_t hi) {
  mpfr_set_si(lo, f.e_power, MPFR_RNDD);
  mpfr_set_si(hi, f.e_power, MPFR_RNDU);
  mpfr_exp(lo, lo, MPFR_RNDD);
  mpfr_exp(hi, hi, MPFR_RNDU);
  mpfr_mul_z(lo, lo, f.rational_part.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(hi, hi, f.rational_part.get_mpz_t(), MPFR_RNDU);
}

}  // namespace

Enclosure fixedn_value(const FixedNAsymptotic& f, int precision_bits) {
  check_precision(precision_bits);
  const int prec = precision_bits + 32;
  Real lo(prec), hi(prec);
  fixedn_bounds(f, lo.v, hi.v);
  return make_enclosure(lo.v, hi.v, precision_bits);
}

Enclosure fixedn_ratio(const BigInt& w, const FixedNAsymptotic& f, int precision_bits) {
  check_precision(precision_bits);
  const int prec = precision_bits + 32;
  Real vlo(prec), vhi(prec), lo(prec), hi(prec);
  fixedn_bounds(f, vlo.v, vhi.v);
  mpfr_set_z(lo.v, w.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.v, w.get_mpz_t(), MPFR_RNDU);
  mpfr_div(lo.v, lo.v, vhi.v, MPFR_RNDD);
  mpfr_div(hi.v, hi.v, vlo.v, MPFR_RNDU);
  check_width(lo.v, hi.v, precision_bits);
  return make_enclosure(lo.v, hi.v, precision_bits);
}

std::string fit_constant(const guess::Sequence& terms, const AsymptoticExpansion& e, long n_from, long n_to,
                         int precision_bits) {
  check_precision(precision_bits);
  if (n_from < 1 || n_to < n_from || !terms.covers(n_from) || !terms.covers(n_to))
    throw Error("invalid-argument", "fit window must lie inside the terms and start at n >= 1");
  Real sum(precision_bits), q(precision_bits), t(precision_bits), th(precision_bits);
  mpfr_set_zero(sum.v, 1);
  mpfr_set_q(th.v, e.theta.get_mpq_t(), MPFR_RNDN);
  for (long n = n_from; n <= n_to; ++n) {
    BigRat s = 1;
    for (int k = 1; k <= e.order(); ++k) s += e.c[static_cast<std::size_t>(k - 1)] / BigRat(int_pow(n, static_cast<unsigned long>(k)));
    // a(n) / (lambda^n s), then divide by n^theta.
    const BigRat x = BigRat(terms.at(n)) / (rat_pow(e.lambda, static_cast<unsigned long>(n)) * s);
    mpfr_set_q(q.v, x.get_mpq_t(), MPFR_RNDN);
    mpfr_set_si(t.v, n, MPFR_RNDN);
    mpfr_pow(t.v, t.v, th.v, MPFR_RNDN);
    mpfr_div(q.v, q.v, t.v, MPFR_RNDN);
    mpfr_add(sum.v, sum.v, q.v, MPFR_RNDN);
  }
  mpfr_div_si(sum.v, sum.v, n_to - n_from + 1, MPFR_RNDN);
  return decimal(sum.v, MPFR_RNDN, precision_bits);
}

void write_expansion(std::ostream& os, const AsymptoticExpansion& e) {
  os << "lambda: " << to_string(e.lambda) << '\n';
  os << "theta: " << to_string(e.theta) << '\n';
  for (int k = 1; k <= e.order(); ++k) os << 'c' << k << ": " << to_string(e.c[static_cast<std::size_t>(k - 1)]) << '\n';
}

}  // namespace rookwalk::asym
