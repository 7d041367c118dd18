#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rookwalk/algebra/poly.hpp"
#include "rookwalk/rook_engine.hpp"

namespace rookwalk::guess {

/// Integer sequence a(offset), a(offset + 1), ...
struct Sequence {
  long offset = 0;
  std::vector<BigInt> terms;

  long first() const { return offset; }
  long last() const { return offset + static_cast<long>(terms.size()) - 1; }
  bool covers(long n) const { return n >= first() && n <= last(); }
  const BigInt& at(long n) const { return terms[static_cast<std::size_t>(n - offset)]; }
  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// sum_{i=0}^{r} p_i(n) a(n + i) = 0 for n >= valid_from.
struct Recurrence {
  std::vector<Poly> coeffs;  // p_0 .. p_r
  long valid_from = 0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int degree() const;
  /// sum_i p_i(n) a(n + i); every a(n + i) must be covered.
  BigInt residual(const Sequence& seq, long n) const;
  friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// Removes the polynomial content, drops vanishing outer coefficients, and
/// fixes the sign so that the leading coefficient of p_r is positive.
/// Shifting out a zero p_0 raises valid_from by one.
Recurrence normalize(Recurrence rec);

enum class SearchOrder {
  /// Ascending order, then ascending degree.
  kOrderFirst,
  /// Ascending unknown count (r + 1)(deg + 1), ties by smaller order.
  kUnknownCount,
};

struct GuessOptions {
  unsigned workers = 1;
  bool modular = true;
  SearchOrder search = SearchOrder::kOrderFirst;
};

struct AnsatzOutcome {
  int order = 0;
  int degree = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  /// "no-kernel", "held-out", "found", or "skipped" (too few equations).
  std::string status;
};

struct GuessReport {
  std::optional<Recurrence> found;
  std::vector<AnsatzOutcome> tried;
  int order = -1;   // ansatz that produced the recurrence
  int degree = -1;
  std::size_t unknowns = 0;
  std::size_t equations_used = 0;  // fit equations
  std::size_t margin = 0;          // held-out equations
  long held_out_from = 0;          // first n of the held-out span
  long held_out_to = -1;           // last n of the held-out span
  std::size_t kernel_dimension = 0;
};

constexpr std::size_t kDefaultMargin = 20;

/// Searches (order, degree) cells up to the given bounds for a recurrence
/// fitted on all but the last `margin` equations and confirmed on those.
/// Throws Error("insufficient-terms") if no cell of the grid can be tested.
GuessReport guess_univariate(const Sequence& terms, int max_order, int max_degree, std::size_t margin = kDefaultMargin,
                             const GuessOptions& options = {});

/// nullopt when the recurrence holds on every applicable index, else the
/// first n with a nonzero residual.
std::optional<long> check_recurrence(const Recurrence& rec, const Sequence& terms);

/// Extends `seeds` up to index `last` (inclusive). Throws Error("singular")
/// when p_r vanishes, Error("non-integral") when a step does not divide.
Sequence extend_with_recurrence(const Recurrence& rec, const Sequence& seeds, long last);

struct RecurrenceStats {
  int order = 0;
  int degree = 0;
  /// Longest integer of the coefficients in factored form (content, linear
  /// factors, remaining cofactor), the way such tables are usually printed.
  std::size_t maxint_digits = 0;
  /// Longest integer of the expanded coefficients.
  std::size_t maxint_expanded_digits = 0;
};
RecurrenceStats recurrence_stats(const Recurrence& rec);

// ---------------------------------------------------------------------------
// Bivariate

using Shift = std::pair<int, int>;  // (i, j): b(n + i, m + j)

/// sum_{(i,j) in S} p_{ij}(n, m) b(n + i, m + j) = 0 for n >= n0, m >= m0.
struct BivariateRecurrence {
  std::vector<Shift> support;   // sorted ascending, lexicographic
  std::vector<BiPoly> coeffs;   // parallel to support
  int degree = 0;               // total-degree bound used by the ansatz
  long valid_n = 0;
  long valid_m = 0;

  /// Lexicographically largest support point: the cell this relation solves for.
  Shift corner() const { return support.back(); }
  BigInt residual(const engine::SliceTable& t, long n, long m) const;
  friend bool operator==(const BivariateRecurrence&, const BivariateRecurrence&) = default;
};

/// All normalized kernel recurrences of the ansatz (support, total degree)
/// fitted on the table minus `margin` border rows and columns and confirmed
/// on that border. Throws Error("insufficient-table").
std::vector<BivariateRecurrence> guess_bivariate(const engine::SliceTable& table, std::vector<Shift> support,
                                                 int max_degree, std::size_t margin = 4,
                                                 const GuessOptions& options = {});

/// Diagonal b(n, n) for 0 <= n <= last, using the table where it reaches and
/// the recurrences beyond it. Every computed cell is checked against all
/// recurrences whose corner lands on it. Throws Error("no-admissible-order")
/// naming the first cell no recurrence can produce.
Sequence diagonal_via_bivariate(const std::vector<BivariateRecurrence>& recs, const engine::SliceTable& table,
                                long last);

/// Monomials n^a m^b of total degree <= degree: by total degree, then by
/// descending power of n. This is the coefficient order of the ansatz and of
/// the file format.
std::vector<BiPoly::Key> graded_monomials(int degree);

/// Support families: {(0,0), ..., (k,0)}, {(0,0), ..., (0,k)}, and the
/// n-advancing block [0, k) x [0, width] plus the corner (k, 0)
/// (support_n_block(k, 0) == support_n(k)).
std::vector<Shift> support_n(int k);
std::vector<Shift> support_m(int k);
std::vector<Shift> support_n_block(int k, int width);

struct BivariatePlan {
  std::vector<BivariateRecurrence> recs;
  int n_order = 0, n_width = 0, n_degree = 0;  // zero order: nothing found
  int m_order = 0, m_degree = 0;
};

/// Finds one n-advancing relation (support_n_block) and one pure-m relation
/// for the table, each the first surviving ansatz in ascending unknown count
/// with order, width <= max_order and total degree <= max_degree.
BivariatePlan guess_slice_recurrences(const engine::SliceTable& table, int max_order, int max_degree,
                                      std::size_t margin = 4, const GuessOptions& options = {});

}  // namespace rookwalk::guess
