#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rookwalk/algebra/number.hpp"

namespace rookwalk::walks {

using Point = std::vector<int>;

/// Dimension plus a set of 0/1 direction vectors; each direction may be
/// taken with any positive integer multiplier.
class WalkModel {
 public:
  WalkModel(int dim, std::vector<Point> steps, std::string name = "custom");

  /// The d unit vectors.
  static WalkModel rook(int dim);
  /// All 2^d - 1 nonzero 0/1 vectors.
  static WalkModel queen(int dim);
  static WalkModel by_name(const std::string& name, int dim);

  int dim() const { return dim_; }
  const std::vector<Point>& steps() const { return steps_; }
  const std::string& name() const { return name_; }
  /// True when every coordinate permutation maps the step set to itself.
  bool permutation_symmetric() const;

 private:
  int dim_;
  std::vector<Point> steps_;
  std::string name_;
};

/// Dense box of counts a(p) for 0 <= p <= bounds, row-major with the last
/// coordinate varying fastest.
class CountTable {
 public:
  CountTable(Point bounds);

  int dim() const { return static_cast<int>(bounds_.size()); }
  const Point& bounds() const { return bounds_; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(const Point& p) const;
  Point point(std::size_t index) const;
  bool contains(const Point& p) const;

  const BigInt& at(const Point& p) const { return values_[index(p)]; }
  BigInt& at(const Point& p) { return values_[index(p)]; }
  const BigInt& at(std::size_t i) const { return values_[i]; }
  BigInt& at(std::size_t i) { return values_[i]; }

  /// a(n, ..., n) for n = 0 .. min(bounds).
  std::vector<BigInt> diagonal() const;

 private:
  Point bounds_;
  std::vector<std::size_t> strides_;
  std::vector<BigInt> values_;
};

/// Byte estimate for a naive_box allocation, counted before any allocation.
std::size_t naive_box_memory_estimate(const WalkModel& model, const Point& bounds);

/// Memory cap in bytes: ROOKWALK_MEMORY_LIMIT_MB if set, else 4096 MB.
std::size_t memory_limit_bytes();

/// All counts in the box by one dynamic-programming sweep. Throws
/// Error("memory-budget") when the estimate exceeds `limit_bytes`
/// (default: memory_limit_bytes()).
CountTable naive_box(const WalkModel& model, const Point& bounds,
                     std::optional<std::size_t> limit_bytes = std::nullopt);

/// Number of walks from the origin to `target`.
BigInt naive_count(const WalkModel& model, const Point& target);

/// Sparse multivariate integer polynomial keyed by exponent vectors.
using MultiPoly = std::map<Point, BigInt>;

/// Cleared form of the generating function p/q = 1 / (1 - sum_v x^v/(1 - x^v)).
/// For every N: sum_i q_i a(N - i) = p_N (coefficient of x^N in p), which is
/// zero for N outside the support of p. Terms with negative indices are 0.
struct DenominatorRecurrence {
  int dim = 0;
  MultiPoly numerator;    // p = prod_v (1 - x^v)
  MultiPoly denominator;  // q

  /// True when N lies outside supp(p), i.e. the homogeneous relation applies.
  bool valid_at(const Point& n) const { return numerator.find(n) == numerator.end(); }
  /// sum_i q_i a(N - i) using values from `table`.
  BigInt residual(const CountTable& table, const Point& n) const;
  /// Coefficient of x^N in p.
  BigInt numerator_coeff(const Point& n) const;
};

DenominatorRecurrence denominator_recurrence(const WalkModel& model);

/// One line per lattice point: indices then value, tab separated.
void write_tsv(std::ostream& os, const CountTable& table);

}  // namespace rookwalk::walks
