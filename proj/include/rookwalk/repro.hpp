#pragma once

// The order / degree / maxint table for rook diagonals, recomputed at desk
// scale and compared with the published rows.

#include <optional>
#include <ostream>
#include <vector>

namespace rookwalk::repro {

struct TableRow {
  int dim = 0;
  int order = 0;
  int degree = 0;
  int maxint_digits = 0;
};

/// Published rows, d = 2 .. 12.
const std::vector<TableRow>& expected_table();
std::optional<TableRow> expected_row(int d);

/// Diagonal terms used to guess the dimension-d recurrence.
int terms_budget(int d);

/// Largest d allowed without opting in to longer runs.
constexpr int kDefaultDmaxBudget = 6;

struct ReproRow {
  TableRow got;
  std::optional<TableRow> expected;
  int terms = 0;
  bool found = false;
  /// "match", "mismatch", "unlisted" (no published row) or "none-found".
  const char* status() const;
};

/// Rows for d = 1 .. dmax. Throws Error("budget") when dmax exceeds `budget`.
std::vector<ReproRow> repro_table(int dmax, unsigned workers = 1, int budget = kDefaultDmaxBudget);

/// Tab-separated rows with a header line.
void write_repro_tsv(std::ostream& os, const std::vector<ReproRow>& rows);

}  // namespace rookwalk::repro
