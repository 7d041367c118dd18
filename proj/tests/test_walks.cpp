#include <algorithm>
#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "doctest.h"
#include "rookwalk/error.hpp"
#include "rookwalk/walks.hpp"

using namespace rookwalk;
using namespace rookwalk::walks;

TEST_CASE("naive counts for small targets") {
  CHECK(naive_count(WalkModel::rook(2), {1, 1}) == 2);
  CHECK(naive_count(WalkModel::rook(3), {2, 2, 2}) == 222);
  CHECK(naive_count(WalkModel::rook(4), {0, 0, 0, 0}) == 1);
  CHECK(naive_count(WalkModel::queen(3), {0, 0, 0}) == 1);
  // (1,0)(0,1), (0,1)(1,0), (1,1)
  CHECK(testing::enumerate_walks(WalkModel::queen(2).steps(), {1, 1}) == 3);
  CHECK(naive_count(WalkModel::queen(2), {1, 1}) == 3);
}

TEST_CASE("dimension mismatch is an error") {
  CHECK_THROWS_AS(naive_count(WalkModel::rook(2), {1, 1, 1}), Error);
  CHECK_THROWS_AS(WalkModel(2, {{1, 2}}), Error);
  CHECK_THROWS_AS(WalkModel(2, {{0, 0}}), Error);
}

TEST_CASE("naive box diagonals") {
  auto t2 = naive_box(WalkModel::rook(2), {5, 5});
  std::vector<BigInt> want = {1, 2, 14, 106, 838, 6802};
  CHECK(t2.diagonal() == want);

  auto t1 = naive_box(WalkModel::rook(1), {4});
  std::vector<BigInt> got;
  for (int n = 0; n <= 4; ++n) got.push_back(t1.at(Point{n}));
  std::vector<BigInt> compositions;
  for (int n = 0; n <= 4; ++n) compositions.push_back(testing::enumerate_walks(WalkModel::rook(1).steps(), {n}));
  CHECK(got == compositions);
  CHECK(got == std::vector<BigInt>{1, 1, 2, 4, 8});
}

TEST_CASE("naive box equals explicit enumeration for d <= 2, n <= 5") {
  for (auto model : {WalkModel::rook(1), WalkModel::rook(2), WalkModel::queen(2)}) {
    Point bounds(static_cast<std::size_t>(model.dim()), 5);
    auto table = naive_box(model, bounds);
    for (std::size_t i = 0; i < table.size(); ++i) {
      Point p = table.point(i);
      CHECK(table.at(i) == testing::enumerate_walks(model.steps(), p));
    }
  }
}

TEST_CASE("memory budget is checked before allocation") {
  try {
    naive_box(WalkModel::rook(4), {40, 40, 40, 40}, std::size_t{1} << 20);
    FAIL("expected memory-budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == "memory-budget");
    CHECK(std::string(e.what()).find("limit is 1 MB") != std::string::npos);
  }
}

TEST_CASE("property: permutation symmetry") {
  std::mt19937 rng(42);
  for (int d = 2; d <= 4; ++d)
    for (auto model : {WalkModel::rook(d), WalkModel::queen(d)}) {
      REQUIRE(model.permutation_symmetric());
      std::uniform_int_distribution<int> coord(0, d == 4 ? 3 : 5);
      for (int trial = 0; trial < 4; ++trial) {
        Point target(static_cast<std::size_t>(d));
        for (auto& x : target) x = coord(rng);
        const BigInt base = naive_count(model, target);
        Point perm = target;
        std::sort(perm.begin(), perm.end());
        do {
          CHECK(naive_count(model, perm) == base);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
}

TEST_CASE("property: rook counts are monotone in each coordinate") {
  for (int d = 1; d <= 3; ++d) {
    Point bounds(static_cast<std::size_t>(d), d == 3 ? 5 : 8);
    auto table = naive_box(WalkModel::rook(d), bounds);
    for (std::size_t i = 0; i < table.size(); ++i) {
      Point p = table.point(i);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == bounds[k]) continue;
        Point q = p;
        ++q[k];
        CHECK(table.at(p) <= table.at(q));
      }
    }
  }
}

TEST_CASE("denominator recurrence coefficients") {
  auto r2 = denominator_recurrence(WalkModel::rook(2));
  MultiPoly q2 = {{{0, 0}, 1}, {{1, 0}, -2}, {{0, 1}, -2}, {{1, 1}, 3}};
  CHECK(r2.denominator == q2);
  MultiPoly p2 = {{{0, 0}, 1}, {{1, 0}, -1}, {{0, 1}, -1}, {{1, 1}, 1}};
  CHECK(r2.numerator == p2);

  auto t = naive_box(WalkModel::rook(2), {3, 3});
  CHECK(t.at(Point{1, 2}) == 5);
  CHECK(t.at(Point{2, 1}) == 5);
  CHECK(t.at(Point{2, 2}) == 2 * 5 + 2 * 5 - 3 * 2);
  CHECK(r2.residual(t, {2, 2}) == 0);

  auto r1 = denominator_recurrence(WalkModel::rook(1));
  MultiPoly q1 = {{{0}, 1}, {{1}, -2}};
  CHECK(r1.denominator == q1);
  CHECK(r1.valid_at({2}));
  CHECK_FALSE(r1.valid_at({1}));
}

TEST_CASE("the reversed constant-term orientation fails where the denominator form holds") {
  // 3 a(n+1,m+1) - 2 a(n,m+1) - 2 a(n+1,m) + a(n,m) at (N,M) = (2,1)
  auto t = naive_box(WalkModel::rook(2), {3, 3});
  const BigInt reversed = 3 * t.at(Point{2, 1}) - 2 * t.at(Point{1, 1}) - 2 * t.at(Point{2, 0}) + t.at(Point{1, 0});
  CHECK(reversed != 0);
  CHECK(denominator_recurrence(WalkModel::rook(2)).residual(t, {2, 1}) == 0);
}

TEST_CASE("property: denominator recurrence matches the oracle box for d <= 3") {
  for (int d = 1; d <= 3; ++d)
    for (auto model : {WalkModel::rook(d), WalkModel::queen(d)}) {
      auto rec = denominator_recurrence(model);
      Point bounds(static_cast<std::size_t>(d), 6);
      auto table = naive_box(model, bounds);
      for (std::size_t i = 0; i < table.size(); ++i) {
        Point n = table.point(i);
        BigInt r = rec.residual(table, n);
        CHECK(r == rec.numerator_coeff(n));
        if (rec.valid_at(n)) CHECK(r == 0);
      }
    }
}

TEST_CASE("count table TSV export") {
  auto t = naive_box(WalkModel::rook(2), {1, 1});
  std::ostringstream os;
  write_tsv(os, t);
  CHECK(os.str() == "0\t0\t1\n0\t1\t1\n1\t0\t1\n1\t1\t2\n");
}
