// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--slow] [--only K]...
//
// --slow adds the d = 6 table row to criteria 4 and 5.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "brute_force.hpp"
#include "cli.hpp"
#include "rookwalk/asym.hpp"
#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"
#include "rookwalk/io.hpp"
#include "rookwalk/repro.hpp"
#include "rookwalk/rook_engine.hpp"
#include "rookwalk/walks.hpp"

using namespace rookwalk;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

bool g_slow = false;

guess::Sequence rook(int d, int count, unsigned workers = 1) {
  return {0, engine::diagonal_terms(d, count - 1, workers).terms};
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}
std::vector<BigInt> scaled(long s, std::vector<BigInt> a) {
  for (auto& x : a) x *= s;
  return a;
}

guess::Recurrence published_2d() {
  guess::Recurrence r;
  r.coeffs = {Poly(ints({0, 9})), Poly(ints({-14, -10})), Poly(ints({2, 1}))};
  return r;
}

guess::Recurrence published_3d() {
  guess::Recurrence r;
  r.coeffs = {
      Poly(scaled(-192, mul(mul(ints({0, 0, 1}), ints({1, 1})), ints({88, 35})))),
      Poly(mul(ints({1, 1}), ints({54864, 100586, 59889, 11305}))),
      Poly(scaled(-1, mul(ints({2, 1}), ints({43362, 63493, 30114, 4655})))),
      Poly(scaled(2, mul(mul(mul(ints({2, 1}), ints({3, 1})), ints({3, 1})), ints({53, 35})))),
  };
  return r;
}

std::optional<guess::Recurrence> guess_from(int d, int count, int max_degree, std::size_t margin) {
  return guess::guess_univariate(rook(d, count), d + 2, max_degree, margin).found;
}

// --- criteria ---------------------------------------------------------------

Outcome c1() {
  Outcome o;
  o.require(rook(2, 6).terms == ints({1, 2, 14, 106, 838, 6802}), "d=2 terms");
  o.require(rook(3, 6).terms == ints({1, 6, 222, 9918, 486924, 25267236}), "d=3 terms");
  o.detail = o.ok ? "d=2 1,2,14,106,838,6802; d=3 1,6,222,9918,486924,25267236" : o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  for (int d = 1; d <= 4; ++d) {
    auto box = walks::naive_box(walks::WalkModel::rook(d), walks::Point(static_cast<std::size_t>(d), 12));
    o.require(box.diagonal() == rook(d, 13).terms, "naive != fast at d=" + std::to_string(d));
  }
  for (int d = 1; d <= 2; ++d) {
    const auto model = walks::WalkModel::rook(d);
    auto box = walks::naive_box(model, walks::Point(static_cast<std::size_t>(d), 5));
    for (std::size_t i = 0; i < box.size(); ++i) {
      const auto p = box.point(i);
      o.require(box.at(i) == BigInt(static_cast<unsigned long>(testing::enumerate_walks(model.steps(), p))),
                "naive != enumeration at d=" + std::to_string(d));
    }
  }
  if (o.ok) o.detail = "naive = fast for d<=4, n<=12; naive = enumeration for d<=2 on the box [0,5]^d";
  return o;
}

Outcome c3() {
  Outcome o;
  auto r2 = guess::guess_univariate(rook(2, 25), 4, 4, 8).found;
  auto r3 = guess::guess_univariate(rook(3, 25), 4, 6, 2).found;
  o.require(r2 && *r2 == published_2d(), "2D recurrence differs");
  o.require(r3 && *r3 == published_3d(), "3D recurrence differs");
  if (!o.ok) return o;
  for (int d : {2, 3}) {
    const auto& rec = d == 2 ? *r2 : *r3;
    auto ext = guess::extend_with_recurrence(rec, rook(d, d + 1), 199);
    o.require(!guess::check_recurrence(rec, ext), "check fails on the extension");
    o.require(ext == rook(d, 200), "extension differs from the engine at d=" + std::to_string(d));
  }
  if (o.ok) o.detail = "2D and 3D recurrences from 25 terms match exactly; 200 extended terms hold and agree";
  return o;
}

struct Row {
  int d, terms, degree_bound;
  std::size_t margin;
};

std::vector<Row> table_rows() {
  std::vector<Row> rows = {{4, 80, 12, 10}, {5, 145, 22, 10}};
  if (g_slow) rows.push_back({6, 250, 34, 10});
  return rows;
}

std::vector<std::pair<int, guess::RecurrenceStats>>& table_stats() {
  static std::vector<std::pair<int, guess::RecurrenceStats>> stats;
  if (stats.empty())
    for (const auto& row : table_rows()) {
      auto rec = guess_from(row.d, row.terms, row.degree_bound, row.margin);
      guess::RecurrenceStats s;
      s.order = -1;
      if (rec) s = guess::recurrence_stats(*rec);
      stats.emplace_back(row.d, s);
    }
  return stats;
}

Outcome c4() {
  Outcome o;
  std::ostringstream rows;
  for (const auto& [d, s] : table_stats()) {
    const auto want = *repro::expected_row(d);
    rows << " (" << s.order << "," << s.degree << "," << s.maxint_digits << " dd)";
    o.require(s.order == want.order && s.degree == want.degree &&
                  static_cast<int>(s.maxint_digits) == want.maxint_digits,
              "d=" + std::to_string(d) + " row differs");
  }
  if (o.ok) o.detail = "rows" + rows.str() + (g_slow ? " for d=4,5,6" : " for d=4,5 (d=6 in the slow tier)");
  return o;
}

Outcome c5() {
  Outcome o;
  std::string ds;
  for (const auto& [d, s] : table_stats()) {
    o.require(s.order == d, "order " + std::to_string(s.order) + " at d=" + std::to_string(d));
    ds += (ds.empty() ? "" : ",") + std::to_string(d);
  }
  if (o.ok) o.detail = "order = d for d=" + ds;
  return o;
}

Outcome c6() {
  Outcome o;
  for (int d : {3, 4}) {
    const auto table = engine::slice_table(d, 39, 39);
    auto plan = guess::guess_slice_recurrences(table, 8, 12, 4);
    if (plan.n_order == 0 || plan.m_order == 0) {
      o.require(false, "no bivariate plan at d=" + std::to_string(d));
      continue;
    }
    auto diag = guess::diagonal_via_bivariate(plan.recs, table, 100);
    o.require(diag == rook(d, 101), "diagonal differs at d=" + std::to_string(d));
  }
  if (o.ok) o.detail = "d=3,4 from 40x40 slice tables to n=100 equal the fast engine";
  return o;
}

Outcome c7() {
  Outcome o;
  auto r2 = guess::guess_univariate(rook(2, 25), 4, 4, 8).found;
  auto r3 = guess::guess_univariate(rook(3, 25), 4, 6, 2).found;
  if (!r2 || !r3) {
    o.require(false, "recurrence not found");
    return o;
  }
  auto e2 = asym::birkhoff_expand(*r2, 10);
  auto e3 = asym::birkhoff_expand(*r3, 10);
  o.require(e2.lambda == 9 && e2.theta == BigRat(-1, 2), "d=2 lambda/theta");
  o.require(e2.c[0] == BigRat(-5, 32) && e2.c[1] == BigRat(-11, 2048), "d=2 c1, c2");
  o.require(e2.c[0] == asym::symbolic_c(1, 2) && e2.c[1] == asym::symbolic_c(2, 2), "d=2 closed forms");
  o.require(e3.lambda == 64 && e3.theta == -1, "d=3 lambda/theta");
  o.require(e3.c[0] == BigRat(-98, 375) && e3.c[0] == asym::symbolic_c(1, 3), "d=3 c1");
  for (const auto& x : asym::expansion_residuals(*r2, e2, 11)) o.require(x == 0, "d=2 substitution residual");
  for (const auto& x : asym::expansion_residuals(*r3, e3, 11)) o.require(x == 0, "d=3 substitution residual");
  if (o.ok) o.detail = "lambda, theta, c1, c2 exact for d=2,3; substitution with K=10 vanishes through n^-11";
  return o;
}

Outcome c8() {
  Outcome o;
  std::ostringstream det;
  for (auto [d, n, tol] : {std::tuple{2, 5000L, 1e-9}, std::tuple{3, 2000L, 1e-7}}) {
    auto rec = guess::guess_univariate(rook(d, 25), 4, 6, d == 2 ? 8 : 2).found;
    if (!rec) {
      o.require(false, "recurrence not found");
      continue;
    }
    const auto terms = guess::extend_with_recurrence(*rec, rook(d, d + 1), n);
    const auto e = asym::birkhoff_expand(*rec, 2);
    const auto r = asym::ratio_check(terms, e, asym::leading_constant(d), n, 256);
    det << (det.str().empty() ? "" : ", ") << "d=" << d << " n=" << n << " |ratio-1| <= " << r.deviation;
    o.require(r.deviation < tol, "d=" + std::to_string(d) + " deviation too large");
  }
  o.detail = o.ok ? det.str() + " (K=2, 256-bit outward enclosure)" : o.detail + " [" + det.str() + "]";
  return o;
}

Outcome c9() {
  Outcome o;
  auto w0 = engine::fixed_n_counts(0, 20);
  auto w1 = engine::fixed_n_counts(1, 20);
  for (int d = 1; d <= 20; ++d) {
    o.require(w0.terms[static_cast<std::size_t>(d - 1)] == 1, "w_0");
    o.require(w1.terms[static_cast<std::size_t>(d - 1)] == factorial(static_cast<unsigned long>(d)), "w_1");
  }
  auto w2 = engine::fixed_n_counts(2, 40);
  o.require(w2.terms[1] == 14 && w2.terms[2] == 222, "w_2(2), w_2(3)");
  double prev = 1e300;
  for (int d = 10; d <= 40; ++d) {
    const auto r = asym::fixedn_ratio(w2.terms[static_cast<std::size_t>(d - 1)], asym::fixedn_asym(2, d));
    // A strict decrease of |ratio - 1| needs the enclosure to separate it from 1.
    o.require(r.distance_lo > 0, "enclosure contains 1 at d=" + std::to_string(d));
    o.require(r.deviation < prev, "|ratio - 1| not decreasing at d=" + std::to_string(d));
    prev = r.deviation;
  }
  if (o.ok) {
    std::ostringstream det;
    det << "w_0 = 1, w_1 = d! for d<=20; w_2(2)=14, w_2(3)=222; |w_2(d) 2^d/(e (2d)!) - 1| decreases over d=10..40 to "
        << prev;
    o.detail = det.str();
  }
  return o;
}

Outcome c10() {
  Outcome o;
  const auto model = walks::WalkModel::queen(2);
  auto box = walks::naive_box(model, {79, 79});
  guess::Sequence seq{0, box.diagonal()};
  // Independent oracle on the first cells.
  for (int n = 0; n <= 4; ++n)
    o.require(seq.at(n) == BigInt(static_cast<unsigned long>(testing::enumerate_walks(model.steps(), {n, n}))),
              "naive != enumeration at n=" + std::to_string(n));
  auto report = guess::guess_univariate(seq, 6, 12, 20);
  o.require(static_cast<bool>(report.found), "no recurrence survives the 20-term held-out check");
  if (o.ok) {
    const auto s = guess::recurrence_stats(*report.found);
    std::ostringstream det;
    det << "queen 2D diagonal to n=79; order " << s.order << ", degree " << s.degree << " recurrence held on n="
        << report.held_out_from << ".." << report.held_out_to << " (" << report.margin << " held-out equations)";
    o.detail = det.str();
  }
  return o;
}

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) throw Error("cli", err.str());
  return out.str();
}

Outcome c11() {
  Outcome o;
  const std::string dir = std::filesystem::temp_directory_path() / "rookwalk_acceptance_";
  auto outputs = [&](const std::string& w) {
    std::vector<std::string> files;
    files.push_back(cli_out({"terms", "--dim", "2", "--count", "6", "--workers", w}));
    files.push_back(cli_out({"terms", "--dim", "3", "--count", "25", "--workers", w}));
    const std::string b2 = dir + "d2.b", b3 = dir + "d3.b";
    io::write_text_file(b2, cli_out({"terms", "--dim", "2", "--count", "25", "--workers", w}));
    io::write_text_file(b3, files.back());
    files.push_back(cli_out({"guess", "--input", b2, "--max-order", "4", "--max-degree", "4", "--margin", "8",
                             "--workers", w}));
    files.push_back(cli_out({"guess", "--input", b3, "--max-order", "4", "--max-degree", "6", "--margin", "2",
                             "--workers", w}));
    const std::string tsv = dir + "s3.tsv", rec = dir + "s3.rec";
    io::write_text_file(tsv, cli_out({"slice", "--dim", "3", "--nmax", "39", "--mmax", "39", "--workers", w}));
    files.push_back(io::read_text_file(tsv));
    io::write_text_file(rec, cli_out({"guess2d", "--input", tsv, "--workers", w}));
    files.push_back(io::read_text_file(rec));
    files.push_back(cli_out({"extend", "--rec", rec, "--input", tsv, "--to", "100"}));
    return files;
  };
  const auto a = outputs("1"), b = outputs("1"), c = outputs("4");
  o.require(a == b, "two runs differ");
  o.require(a == c, "workers 1 and 4 differ");
  if (o.ok) o.detail = std::to_string(a.size()) + " outputs (criteria 1, 3, 6) byte-identical across runs and workers 1/4";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--slow") == 0) g_slow = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--slow] [--only K]\n";
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!only.empty() && !only.count(static_cast<int>(k + 1))) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all &= o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << o.detail << " [" << std::fixed
              << std::setprecision(1) << secs << " s]\n"
              << std::defaultfloat << std::flush;
  }
  return all ? 0 : 1;
}
