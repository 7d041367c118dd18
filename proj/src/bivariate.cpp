#include <algorithm>
#include <map>

#include "rookwalk/algebra/modular.hpp"
#include "rookwalk/algebra/nullspace.hpp"
#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"

namespace rookwalk::guess {

namespace {

struct Region {
  long n_to = -1, m_to = -1;  // base points (n, m) with 0 <= n <= n_to, 0 <= m <= m_to
  std::size_t count() const { return n_to < 0 || m_to < 0 ? 0 : static_cast<std::size_t>((n_to + 1) * (m_to + 1)); }
};

// `skip` excludes the base points of a smaller region (the fitted block).
IntMatrix build_system(const engine::SliceTable& t, const std::vector<Shift>& support, int degree, Region r,
                       Region skip = {}) {
  const auto mons = graded_monomials(degree);
  const std::size_t cols = support.size() * mons.size();
  std::size_t rows = r.count() - skip.count();
  IntMatrix out(rows, cols);
  std::vector<BigInt> npow(static_cast<std::size_t>(degree) + 1), mpow(static_cast<std::size_t>(degree) + 1);
  std::size_t row = 0;
  for (long n = 0; n <= r.n_to; ++n)
    for (long m = 0; m <= r.m_to; ++m) {
      if (n <= skip.n_to && m <= skip.m_to) continue;
      npow[0] = mpow[0] = 1;
      for (int k = 1; k <= degree; ++k) {
        npow[static_cast<std::size_t>(k)] = npow[static_cast<std::size_t>(k) - 1] * n;
        mpow[static_cast<std::size_t>(k)] = mpow[static_cast<std::size_t>(k) - 1] * m;
      }
      for (std::size_t s = 0; s < support.size(); ++s) {
        const BigInt& b = t.at(static_cast<int>(n) + support[s].first, static_cast<int>(m) + support[s].second);
        for (std::size_t k = 0; k < mons.size(); ++k)
          out(row, s * mons.size() + k) =
              b * npow[static_cast<std::size_t>(mons[k].first)] * mpow[static_cast<std::size_t>(mons[k].second)];
      }
      ++row;
    }
  return out;
}

BivariateRecurrence to_bivariate(const std::vector<BigInt>& v, const std::vector<Shift>& support, int degree) {
  const auto mons = graded_monomials(degree);
  BivariateRecurrence rec;
  rec.degree = degree;
  for (std::size_t s = 0; s < support.size(); ++s) {
    BiPoly p;
    for (std::size_t k = 0; k < mons.size(); ++k) p.set(mons[k].first, mons[k].second, v[s * mons.size() + k]);
    if (p.is_zero()) continue;
    rec.support.push_back(support[s]);
    rec.coeffs.push_back(std::move(p));
  }
  return rec;
}

// Leading term of the corner coefficient in graded order.
BigInt corner_lead(const BivariateRecurrence& rec) {
  const BiPoly& p = rec.coeffs.back();
  BiPoly::Key best{-1, -1};
  BigInt c = 0;
  for (const auto& [k, v] : p.terms()) {
    const int t = k.first + k.second, bt = best.first + best.second;
    if (best.first < 0 || t > bt || (t == bt && k.first > best.first)) best = k, c = v;
  }
  return c;
}

// p(n, m0) == 0 as a polynomial in n.
bool vanishes_on_column(const BiPoly& p, long m0) {
  std::map<int, BigInt> by_n;
  for (const auto& [k, c] : p.terms()) {
    BigInt t = 1;
    for (int e = 0; e < k.second; ++e) t *= m0;
    by_n[k.first] += c * t;
  }
  return std::all_of(by_n.begin(), by_n.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

std::vector<BiPoly::Key> graded_monomials(int degree) {
  std::vector<BiPoly::Key> out;
  for (int t = 0; t <= degree; ++t)
    for (int a = t; a >= 0; --a) out.emplace_back(a, t - a);
  return out;
}

BigInt BivariateRecurrence::residual(const engine::SliceTable& t, long n, long m) const {
  BigInt acc = 0;
  const BigInt nn = n, mm = m;
  for (std::size_t s = 0; s < support.size(); ++s)
    acc += coeffs[s](nn, mm) * t.at(static_cast<int>(n) + support[s].first, static_cast<int>(m) + support[s].second);
  return acc;
}

std::vector<Shift> support_n(int k) {
  std::vector<Shift> s;
  for (int i = 0; i <= k; ++i) s.emplace_back(i, 0);
  return s;
}

std::vector<Shift> support_n_block(int k, int width) {
  std::vector<Shift> s;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= width; ++j) s.emplace_back(i, j);
  s.emplace_back(k, 0);
  return s;
}

std::vector<Shift> support_m(int k) {
  std::vector<Shift> s;
  for (int j = 0; j <= k; ++j) s.emplace_back(0, j);
  return s;
}

std::vector<BivariateRecurrence> guess_bivariate(const engine::SliceTable& table, std::vector<Shift> support,
                                                 int max_degree, std::size_t margin, const GuessOptions& options) {
  if (support.empty()) throw Error("invalid-argument", "empty support");
  if (max_degree < 0) throw Error("invalid-argument", "degree must be nonnegative");
  if (margin < 1) throw Error("invalid-argument", "margin must be positive");
  for (const auto& [i, j] : support)
    if (i < 0 || j < 0) throw Error("invalid-argument", "support shifts must be nonnegative");
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  int imax = 0, jmax = 0;
  for (const auto& [i, j] : support) imax = std::max(imax, i), jmax = std::max(jmax, j);
  const Region all{table.max_n - imax, table.max_m - jmax};
  const Region fit{all.n_to - static_cast<long>(margin), all.m_to - static_cast<long>(margin)};
  const std::size_t unknowns = support.size() * graded_monomials(max_degree).size();
  if (fit.count() < unknowns + margin)
    throw Error("insufficient-table", "ansatz with " + std::to_string(unknowns) + " unknowns and margin " +
                                          std::to_string(margin) + " needs a larger table than " +
                                          std::to_string(table.max_n + 1) + "x" + std::to_string(table.max_m + 1));

  std::vector<BivariateRecurrence> out;
  if (kernel_dimension_mod(build_system(table, support, max_degree, all), modular::word_prime(0)) == 0) return out;
  IntMatrix fitted = build_system(table, support, max_degree, fit);
  KernelBasis kernel = options.modular ? nullspace_modular(fitted, options.workers) : nullspace_exact(fitted);
  KernelBasis surviving = restrict_kernel(kernel, build_system(table, support, max_degree, all, fit));
  for (const auto& v : surviving) {
    BivariateRecurrence rec = to_bivariate(v, support, max_degree);
    if (corner_lead(rec) < 0)
      for (auto& p : rec.coeffs) {
        BiPoly q;
        for (const auto& [k, c] : p.terms()) q.set(k.first, k.second, -c);
        p = std::move(q);
      }
    out.push_back(std::move(rec));
  }
  return out;
}

BivariatePlan guess_slice_recurrences(const engine::SliceTable& table, int max_order, int max_degree,
                                      std::size_t margin, const GuessOptions& options) {
  struct Cell {
    std::size_t unknowns;
    int order, width, degree;
  };
  BivariatePlan plan;
  // Cells in ascending unknown count; the first surviving one wins.
  auto search = [&](bool advance_n) {
    std::vector<Cell> cells;
    for (int k = 1; k <= max_order; ++k)
      for (int w = 0; w <= (advance_n ? max_order : 0); ++w)
        for (int d = 0; d <= max_degree; ++d) {
          const std::size_t points = advance_n ? support_n_block(k, w).size() : support_m(k).size();
          cells.push_back({points * static_cast<std::size_t>((d + 1) * (d + 2) / 2), k, w, d});
        }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.unknowns < y.unknowns; });
    for (const auto& c : cells) {
      std::vector<BivariateRecurrence> recs;
      try {
        recs = guess_bivariate(table, advance_n ? support_n_block(c.order, c.width) : support_m(c.order), c.degree,
                               margin, options);
      } catch (const Error& e) {
        if (e.kind() != "insufficient-table") throw;
        return;
      }
      const Shift corner = advance_n ? Shift{c.order, 0} : Shift{0, c.order};
      if (std::none_of(recs.begin(), recs.end(), [&](const auto& r) { return r.corner() == corner; })) continue;
      // Columns below the pure-m order can only be reached by the n-advancing
      // relation, so its corner coefficient must not vanish on them.
      if (advance_n) {
        bool covered = true;
        for (long m0 = 0; m0 < std::max(1, plan.m_order) && covered; ++m0)
          covered = std::any_of(recs.begin(), recs.end(), [&](const auto& r) {
            return r.corner() == corner && !vanishes_on_column(r.coeffs.back(), m0);
          });
        if (!covered) continue;
      }
      if (advance_n)
        plan.n_order = c.order, plan.n_width = c.width, plan.n_degree = c.degree;
      else
        plan.m_order = c.order, plan.m_degree = c.degree;
      for (auto& r : recs) plan.recs.push_back(std::move(r));
      return;
    }
  };
  search(false);
  search(true);
  return plan;
}

Sequence diagonal_via_bivariate(const std::vector<BivariateRecurrence>& recs, const engine::SliceTable& table,
                                long last) {
  if (last < 0) throw Error("invalid-argument", "last index must be nonnegative");
  Sequence out;
  const long inside = std::min(table.max_n, table.max_m);
  if (last <= inside) {
    for (long n = 0; n <= last; ++n) out.terms.push_back(table.at(static_cast<int>(n), static_cast<int>(n)));
    return out;
  }

  const long side = last + 1;
  auto in_table = [&](long n, long m) { return n <= table.max_n && m <= table.max_m; };
  // Base point of `rec` when solving for (n, m), if all its cells stay in the square.
  auto base_for = [&](const BivariateRecurrence& rec, long n, long m) -> std::optional<std::pair<long, long>> {
    const long bn = n - rec.corner().first, bm = m - rec.corner().second;
    if (bn < std::max(0L, rec.valid_n) || bm < std::max(0L, rec.valid_m)) return std::nullopt;
    for (const auto& [i, j] : rec.support)
      if (bn + i > last || bm + j > last) return std::nullopt;
    return std::make_pair(bn, bm);
  };
  auto blocked = [](long n, long m, const std::string& why) {
    return Error("no-admissible-order",
                 "no recurrence can produce cell (" + std::to_string(n) + ", " + std::to_string(m) + ")" + why);
  };

  // Structural check over the fill order before any arithmetic.
  for (long n = 0; n < side; ++n)
    for (long m = 0; m < side; ++m) {
      if (in_table(n, m)) continue;
      bool any = false;
      for (const auto& rec : recs) any |= base_for(rec, n, m).has_value();
      if (!any) throw blocked(n, m, "");
    }

  std::vector<BigInt> cells(static_cast<std::size_t>(side * side));
  auto cell = [&](long n, long m) -> BigInt& { return cells[static_cast<std::size_t>(n * side + m)]; };
  BigInt acc, lead;
  for (long n = 0; n < side; ++n)
    for (long m = 0; m < side; ++m) {
      if (in_table(n, m)) {
        cell(n, m) = table.at(static_cast<int>(n), static_cast<int>(m));
        continue;
      }
      const BivariateRecurrence* chosen = nullptr;
      for (const auto& rec : recs) {
        auto base = base_for(rec, n, m);
        if (!base) continue;
        const BigInt bn = base->first, bm = base->second;
        lead = rec.coeffs.back()(bn, bm);
        if (lead == 0) continue;
        acc = 0;
        for (std::size_t s = 0; s + 1 < rec.support.size(); ++s)
          acc += rec.coeffs[s](bn, bm) * cell(base->first + rec.support[s].first, base->second + rec.support[s].second);
        acc = -acc;
        if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
          throw Error("non-integral", "bivariate step is not integral at (" + std::to_string(n) + ", " +
                                          std::to_string(m) + ")");
        mpz_divexact(cell(n, m).get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
        chosen = &rec;
        break;
      }
      if (!chosen) throw blocked(n, m, ": every applicable leading coefficient vanishes");
      for (const auto& rec : recs) {
        if (&rec == chosen) continue;
        auto base = base_for(rec, n, m);
        if (!base) continue;
        const BigInt bn = base->first, bm = base->second;
        acc = 0;
        for (std::size_t s = 0; s < rec.support.size(); ++s)
          acc += rec.coeffs[s](bn, bm) * cell(base->first + rec.support[s].first, base->second + rec.support[s].second);
        if (acc != 0)
          throw Error("inconsistent-recurrences", "recurrences disagree at cell (" + std::to_string(n) + ", " +
                                                      std::to_string(m) + ")");
      }
    }
  for (long n = 0; n <= last; ++n) out.terms.push_back(cell(n, n));
  return out;
}

}  // namespace rookwalk::guess
