#pragma once

// Fast rook counts via the four-term recurrence in the last two coordinates
//
//   l a(.., j, l) = (j-1) a(.., j-1, l-1) + (j+1) a(.., j+1, l-1)
//                 + (2-l) a(.., j, l-2) + (2l-2j-2) a(.., j, l-1),
//
// which keeps the leading coordinates fixed. Entries with a negative index
// are zero and a trailing zero coordinate drops the dimension.

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "rookwalk/algebra/number.hpp"

namespace rookwalk::engine {

struct DiagonalSeries {
  int dim = 0;
  std::vector<BigInt> terms;  // a(n, ..., n), offset 0
  std::uint64_t cell_updates = 0;
};

/// b(n, m) = a(n, ..., n, m) with d - 1 leading coordinates equal to n.
struct SliceTable {
  int dim = 0;
  int max_n = 0;
  int max_m = 0;
  std::vector<BigInt> values;  // row-major (n, m)

  const BigInt& at(int n, int m) const {
    return values[static_cast<std::size_t>(n) * (static_cast<std::size_t>(max_m) + 1) + static_cast<std::size_t>(m)];
  }
  BigInt& at(int n, int m) {
    return values[static_cast<std::size_t>(n) * (static_cast<std::size_t>(max_m) + 1) + static_cast<std::size_t>(m)];
  }
};

/// w_n(d) for d = 1 .. dmax (terms[0] is d = 1).
struct FixedNSeries {
  int n = 0;
  std::vector<BigInt> terms;
};

/// One application of the four-term recurrence at (j, l), l >= 1; `grid`
/// returns a(.., j, l) for any j, l >= 0. Throws Error("corrupt-grid") when
/// the right-hand side is not divisible by l.
BigInt step_recurrence(long j, long l, const std::function<BigInt(long, long)>& grid);

/// a(n, ..., n) for 0 <= n <= max_n; `workers` threads split the n range.
DiagonalSeries diagonal_terms(int dim, int max_n, unsigned workers = 1);

/// a(n^{dim-1}, j) for j = 0 .. max_j at fixed n (the column through the
/// near-diagonal point). cell_updates is incremented by the recurrence
/// applications used.
std::vector<BigInt> near_diagonal_column(int dim, int n, int max_j, std::uint64_t* cell_updates = nullptr);

SliceTable slice_table(int dim, int max_n, int max_m, unsigned workers = 1);

FixedNSeries fixed_n_counts(int n, int dmax, unsigned workers = 1);

/// Tab-separated "n m value" lines, row-major.
void write_tsv(std::ostream& os, const SliceTable& table);

}  // namespace rookwalk::engine
