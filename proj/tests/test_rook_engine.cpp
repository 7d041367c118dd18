#include "doctest.h"
#include "rookwalk/error.hpp"
#include "rookwalk/rook_engine.hpp"
#include "rookwalk/walks.hpp"

using namespace rookwalk;
using namespace rookwalk::engine;

TEST_CASE("four-term recurrence on the 2D grid") {
  auto t = walks::naive_box(walks::WalkModel::rook(2), {4, 4});
  auto grid = [&](long j, long l) { return t.at(walks::Point{static_cast<int>(j), static_cast<int>(l)}); };
  CHECK(t.at(walks::Point{2, 0}) == 2);
  CHECK(t.at(walks::Point{3, 1}) == 12);
  CHECK(t.at(walks::Point{2, 1}) == 5);
  CHECK(step_recurrence(1, 1, grid) == 2);
  CHECK(step_recurrence(2, 2, grid) == 14);
  CHECK(step_recurrence(0, 1, grid) == t.at(walks::Point{0, 1}));
  for (long j = 0; j <= 3; ++j)
    for (long l = 1; l <= 3; ++l) CHECK(step_recurrence(j, l, grid) == grid(j, l));
}

TEST_CASE("a corrupted grid is detected") {
  auto grid = [](long j, long l) { return BigInt(j == 2 && l == 2 ? 2 : 1); };
  CHECK_THROWS_AS(step_recurrence(1, 3, grid), Error);
}

TEST_CASE("diagonal terms") {
  CHECK(diagonal_terms(2, 5).terms == std::vector<BigInt>{1, 2, 14, 106, 838, 6802});
  CHECK(diagonal_terms(3, 5).terms == std::vector<BigInt>{1, 6, 222, 9918, 486924, 25267236});
  CHECK(diagonal_terms(1, 4).terms == std::vector<BigInt>{1, 1, 2, 4, 8});
  for (int d = 1; d <= 9; ++d) CHECK(diagonal_terms(d, 1).terms[1] == factorial(static_cast<unsigned long>(d)));
  CHECK(diagonal_terms(3, 0).terms == std::vector<BigInt>{1});
}

TEST_CASE("fast engine equals the naive box for d <= 4, n <= 12") {
  for (int d = 1; d <= 4; ++d) {
    const int n = d == 4 ? 10 : 12;  // d = 4, n = 12 is covered by the acceptance suite
    auto box = walks::naive_box(walks::WalkModel::rook(d), walks::Point(static_cast<std::size_t>(d), n));
    CHECK(diagonal_terms(d, n).terms == box.diagonal());
  }
}

TEST_CASE("worker count does not change results") {
  auto a = diagonal_terms(4, 30, 1);
  auto b = diagonal_terms(4, 30, 3);
  CHECK(a.terms == b.terms);
  CHECK(a.cell_updates == b.cell_updates);
}

TEST_CASE("slice tables") {
  auto t3 = slice_table(3, 6, 6);
  CHECK(t3.at(2, 2) == 222);
  CHECK(t3.at(2, 0) == 14);

  auto t4 = slice_table(4, 5, 3);
  CHECK(t4.at(5, 3) == walks::naive_count(walks::WalkModel::rook(4), {5, 5, 5, 3}));
}

TEST_CASE("property: slice diagonal and reduction") {
  for (int d = 2; d <= 6; ++d) {
    const int n = d <= 5 ? 30 : 15;
    auto t = slice_table(d, n, n);
    auto diag = diagonal_terms(d, n).terms;
    auto lower = diagonal_terms(d - 1, n).terms;
    for (int k = 0; k <= n; ++k) {
      CHECK(t.at(k, k) == diag[static_cast<std::size_t>(k)]);
      CHECK(t.at(k, 0) == lower[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("fixed-n counts") {
  CHECK(fixed_n_counts(1, 5).terms.back() == 120);
  for (auto& w : fixed_n_counts(0, 7).terms) CHECK(w == 1);
  auto w2 = fixed_n_counts(2, 3).terms;
  CHECK(w2[1] == 14);
  CHECK(w2[2] == 222);
}

TEST_CASE("operation count grows like n^3 for fixed d") {
  auto a = diagonal_terms(3, 20).cell_updates;
  auto b = diagonal_terms(3, 40).cell_updates;
  // ratio of sum_n n^2 sums; stays between 6 and 10
  const double r = static_cast<double>(b) / static_cast<double>(a);
  CHECK(r > 6.0);
  CHECK(r < 10.0);
}
