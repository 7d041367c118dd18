#include "rookwalk/repro.hpp"

#include <string>

#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"
#include "rookwalk/rook_engine.hpp"

namespace rookwalk::repro {

const std::vector<TableRow>& expected_table() {
  static const std::vector<TableRow> rows = {
      {2, 2, 1, 2},     {3, 3, 4, 6},     {4, 4, 9, 12},     {5, 5, 18, 31},     {6, 6, 31, 51},     {7, 7, 50, 94},
      {8, 8, 75, 149},  {9, 9, 108, 236}, {10, 10, 149, 306}, {11, 11, 200, 462}, {12, 12, 261, 609},
  };
  return rows;
}

std::optional<TableRow> expected_row(int d) {
  for (const auto& r : expected_table())
    if (r.dim == d) return r;
  return std::nullopt;
}

int terms_budget(int d) {
  switch (d) {
    case 1: return 30;
    case 2: return 40;
    case 3: return 50;
    case 4: return 90;
    case 5: return 150;
    case 6: return 260;
    case 7: return 480;
    default: return 1600;
  }
}

const char* ReproRow::status() const {
  if (!found) return "none-found";
  if (!expected) return "unlisted";
  return got.order == expected->order && got.degree == expected->degree && got.maxint_digits == expected->maxint_digits
             ? "match"
             : "mismatch";
}

std::vector<ReproRow> repro_table(int dmax, unsigned workers, int budget) {
  if (dmax < 1) throw Error("invalid-argument", "dmax must be positive");
  if (dmax > budget)
    throw Error("budget", "dmax " + std::to_string(dmax) + " exceeds the budget " + std::to_string(budget) +
                              "; larger rows are long-running reproductions");
  std::vector<ReproRow> rows;
  guess::GuessOptions options;
  options.workers = workers;
  for (int d = 1; d <= dmax; ++d) {
    ReproRow row;
    row.got.dim = d;
    row.expected = expected_row(d);
    row.terms = terms_budget(d);
    auto series = engine::diagonal_terms(d, row.terms - 1, workers);
    guess::Sequence seq{0, std::move(series.terms)};
    // Cells with more unknowns than terms cannot be tested anyway.
    auto report = guess::guess_univariate(seq, d + 1, row.terms / (d + 1), guess::kDefaultMargin, options);
    if (report.found) {
      const auto s = guess::recurrence_stats(*report.found);
      row.found = true;
      row.got.order = s.order;
      row.got.degree = s.degree;
      row.got.maxint_digits = static_cast<int>(s.maxint_digits);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_repro_tsv(std::ostream& os, const std::vector<ReproRow>& rows) {
  os << "dim\tterms\torder\tdegree\tmaxint\texpected_order\texpected_degree\texpected_maxint\tstatus\n";
  for (const auto& r : rows) {
    os << r.got.dim << '\t' << r.terms << '\t';
    if (r.found)
      os << r.got.order << '\t' << r.got.degree << '\t' << r.got.maxint_digits << " dd";
    else
      os << "-\t-\t-";
    os << '\t';
    if (r.expected)
      os << r.expected->order << '\t' << r.expected->degree << '\t' << r.expected->maxint_digits << " dd";
    else
      os << "-\t-\t-";
    os << '\t' << r.status() << '\n';
  }
}

}  // namespace rookwalk::repro
