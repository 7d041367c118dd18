#include "rookwalk/guess.hpp"

#include <algorithm>

#include "rookwalk/algebra/modular.hpp"
#include "rookwalk/algebra/nullspace.hpp"
#include "rookwalk/error.hpp"

namespace rookwalk::guess {

int Recurrence::degree() const {
  int d = -1;
  for (const auto& p : coeffs) d = std::max(d, p.degree());
  return d;
}

BigInt Recurrence::residual(const Sequence& seq, long n) const {
  BigInt acc = 0;
  const BigInt nn = n;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    acc += coeffs[i](nn) * seq.at(n + static_cast<long>(i));
  }
  return acc;
}

Recurrence normalize(Recurrence rec) {
  while (!rec.coeffs.empty() && rec.coeffs.back().is_zero()) rec.coeffs.pop_back();
  while (!rec.coeffs.empty() && rec.coeffs.front().is_zero()) {
    // sum_{i>=1} p_i(n) a(n+i) = 0 for n >= n0  <=>  sum_i p_{i+1}(n-1) a(n+i) = 0 for n >= n0+1
    rec.coeffs.erase(rec.coeffs.begin());
    for (auto& p : rec.coeffs) p = p.shifted(-1);
    ++rec.valid_from;
  }
  if (rec.coeffs.empty()) return rec;
  Poly g;
  for (const auto& p : rec.coeffs) g = poly_gcd(g, p);
  if (!(g == Poly::constant(1))) {
    for (auto& p : rec.coeffs) p = exact_quotient(p, g);
  }
  BigInt c = 0;
  for (const auto& p : rec.coeffs) c = gcd(c, content(p));
  if (c > 1)
    for (auto& p : rec.coeffs) {
      auto v = p.coeffs();
      for (auto& x : v) x /= c;
      p = Poly(std::move(v), p.var());
    }
  if (rec.coeffs.back().leading() < 0)
    for (auto& p : rec.coeffs) p = -p;
  return rec;
}

namespace {

// Column layout: p_i's coefficient of n^k sits at i * (deg + 1) + k.
IntMatrix build_system(const Sequence& seq, int order, int degree, long n_from, long n_to) {
  const std::size_t cols = static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(degree + 1);
  IntMatrix m(static_cast<std::size_t>(n_to - n_from + 1), cols);
  BigInt power;
  for (long n = n_from; n <= n_to; ++n) {
    const std::size_t r = static_cast<std::size_t>(n - n_from);
    for (int i = 0; i <= order; ++i) {
      const BigInt& a = seq.at(n + i);
      power = 1;
      for (int k = 0; k <= degree; ++k) {
        m(r, static_cast<std::size_t>(i * (degree + 1) + k)) = power * a;
        power *= n;
      }
    }
  }
  return m;
}

Recurrence to_recurrence(const std::vector<BigInt>& v, int order, int degree, long valid_from) {
  Recurrence rec;
  rec.valid_from = valid_from;
  for (int i = 0; i <= order; ++i) {
    auto first = v.begin() + i * (degree + 1);
    rec.coeffs.emplace_back(std::vector<BigInt>(first, first + degree + 1));
  }
  return rec;
}

long smallest_valid_from(const Recurrence& rec, const Sequence& seq) {
  long n = seq.last() - rec.order();
  while (n >= seq.first() && rec.residual(seq, n) == 0) --n;
  return n + 1;
}

}  // namespace

GuessReport guess_univariate(const Sequence& seq, int max_order, int max_degree, std::size_t margin,
                             const GuessOptions& options) {
  if (max_order < 1 || max_degree < 0) throw Error("invalid-argument", "need max_order >= 1 and max_degree >= 0");
  if (margin < 1) throw Error("invalid-argument", "margin must be positive");

  std::vector<std::pair<int, int>> cells;
  for (int r = 1; r <= max_order; ++r)
    for (int d = 0; d <= max_degree; ++d) cells.emplace_back(r, d);
  if (options.search == SearchOrder::kUnknownCount)
    std::stable_sort(cells.begin(), cells.end(), [](auto a, auto b) {
      const long ua = (a.first + 1L) * (a.second + 1L), ub = (b.first + 1L) * (b.second + 1L);
      return ua != ub ? ua < ub : a.first < b.first;
    });

  const long count = static_cast<long>(seq.terms.size());
  GuessReport report;
  report.margin = margin;
  bool any_testable = false;
  std::size_t min_needed = 0;

  for (auto [r, d] : cells) {
    AnsatzOutcome out{r, d, static_cast<std::size_t>(r + 1) * static_cast<std::size_t>(d + 1), 0, ""};
    const long equations = count - r;
    const std::size_t needed = out.unknowns + margin + static_cast<std::size_t>(r);
    if (min_needed == 0 || needed < min_needed) min_needed = needed;
    if (equations < static_cast<long>(out.unknowns + margin)) {
      out.status = "skipped";
      report.tried.push_back(out);
      continue;
    }
    any_testable = true;
    const long n_first = seq.first();
    const long n_last = seq.first() + equations - 1;
    const long fit_last = n_last - static_cast<long>(margin);
    out.equations = static_cast<std::size_t>(fit_last - n_first + 1);

    IntMatrix full = build_system(seq, r, d, n_first, n_last);
    if (kernel_dimension_mod(full, modular::word_prime(0)) == 0) {
      out.status = "no-kernel";
      report.tried.push_back(out);
      continue;
    }
    IntMatrix fit = build_system(seq, r, d, n_first, fit_last);
    KernelBasis kernel = options.modular ? nullspace_modular(fit, options.workers) : nullspace_exact(fit);
    IntMatrix held = build_system(seq, r, d, fit_last + 1, n_last);
    KernelBasis surviving = restrict_kernel(kernel, held);
    if (surviving.empty()) {
      out.status = kernel.empty() ? "no-kernel" : "held-out";
      report.tried.push_back(out);
      continue;
    }
    out.status = "found";
    report.tried.push_back(out);

    Recurrence rec = normalize(to_recurrence(surviving.front(), r, d, n_first));
    rec.valid_from = smallest_valid_from(rec, seq);
    report.found = rec;
    report.order = r;
    report.degree = d;
    report.unknowns = out.unknowns;
    report.equations_used = out.equations;
    report.held_out_from = fit_last + 1;
    report.held_out_to = n_last;
    report.kernel_dimension = surviving.size();
    return report;
  }
  if (!any_testable)
    throw Error("insufficient-terms", "the search grid needs at least " + std::to_string(min_needed) +
                                          " terms with margin " + std::to_string(margin) + ", got " +
                                          std::to_string(count));
  return report;
}

std::optional<long> check_recurrence(const Recurrence& rec, const Sequence& terms) {
  const long r = rec.order();
  for (long n = std::max(rec.valid_from, terms.first()); n + r <= terms.last(); ++n)
    if (rec.residual(terms, n) != 0) return n;
  return std::nullopt;
}

Sequence extend_with_recurrence(const Recurrence& rec, const Sequence& seeds, long last) {
  const long r = rec.order();
  if (r < 1) throw Error("invalid-argument", "recurrence order must be positive");
  if (static_cast<long>(seeds.terms.size()) < r)
    throw Error("insufficient-terms", "need " + std::to_string(r) + " seed terms, got " + std::to_string(seeds.terms.size()));
  if (seeds.last() - r + 1 < rec.valid_from)
    throw Error("invalid-argument", "seed terms end before the recurrence becomes valid at n=" + std::to_string(rec.valid_from));
  Sequence out = seeds;
  BigInt acc, q, lead;
  for (long k = seeds.last() + 1; k <= last; ++k) {
    const long n = k - r;
    const BigInt nn = n;
    lead = rec.coeffs.back()(nn);
    if (lead == 0) throw Error("singular", "leading coefficient vanishes at n=" + std::to_string(n));
    acc = 0;
    for (long i = 0; i < r; ++i) {
      const Poly& p = rec.coeffs[static_cast<std::size_t>(i)];
      if (!p.is_zero()) acc += p(nn) * out.at(n + i);
    }
    acc = -acc;
    if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
      throw Error("non-integral", "extension step is not integral at index " + std::to_string(k));
    mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    out.terms.push_back(q);
  }
  return out;
}

namespace {

std::size_t max_digits(const Poly& p) {
  std::size_t m = 0;
  for (const auto& c : p.coeffs()) m = std::max(m, decimal_digits(c));
  return m;
}

// Digits of the longest integer when p is written as content times its
// linear factors times the remaining cofactor. A polynomial with a single
// nonconstant factor is written out whole, content included.
std::size_t factored_digits(const Poly& p) {
  if (p.is_zero()) return 1;
  LinearSplit split = split_linear_factors(p);
  int factors = split.cofactor.degree() >= 1 ? 1 : 0;
  for (const auto& [f, mult] : split.linear) factors += mult;
  if (factors <= 1) return max_digits(p);
  std::size_t m = decimal_digits(split.content);
  for (const auto& [f, mult] : split.linear) m = std::max(m, max_digits(f));
  if (split.cofactor.degree() >= 1) m = std::max(m, max_digits(split.cofactor));
  return m;
}

}  // namespace

RecurrenceStats recurrence_stats(const Recurrence& rec) {
  RecurrenceStats s;
  s.order = rec.order();
  s.degree = rec.degree();
  for (const auto& p : rec.coeffs) {
    s.maxint_digits = std::max(s.maxint_digits, factored_digits(p));
    s.maxint_expanded_digits = std::max(s.maxint_expanded_digits, max_digits(p));
  }
  return s;
}

}  // namespace rookwalk::guess
