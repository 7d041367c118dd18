#include <algorithm>
#include <random>

#include "doctest.h"
#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"
#include "rookwalk/rook_engine.hpp"

using namespace rookwalk;
using namespace rookwalk::guess;

namespace {

using Coeffs = std::vector<BigInt>;

// Plain convolution; the expected operators are written as products.
Coeffs mul(const Coeffs& a, const Coeffs& b) {
  Coeffs c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}
Coeffs mul(std::initializer_list<Coeffs> fs) {
  Coeffs out{1};
  for (const auto& f : fs) out = mul(out, f);
  return out;
}
Coeffs scale(BigInt s, Coeffs a) {
  for (auto& x : a) x *= s;
  return a;
}

Recurrence rec_of(std::vector<Coeffs> cs, long valid_from = 0) {
  Recurrence r;
  for (auto& c : cs) r.coeffs.emplace_back(std::move(c));
  r.valid_from = valid_from;
  return r;
}

// (n+2) a(n+2) - (10n+14) a(n+1) + 9n a(n) = 0
Recurrence rec2d() { return rec_of({{0, 9}, {-14, -10}, {2, 1}}); }

Recurrence rec3d() {
  return rec_of({
      scale(-192, mul({{0, 0, 1}, {1, 1}, {88, 35}})),
      mul({{1, 1}, {54864, 100586, 59889, 11305}}),
      scale(-1, mul({{2, 1}, {43362, 63493, 30114, 4655}})),
      scale(2, mul({{2, 1}, {3, 1}, {3, 1}, {53, 35}})),
  });
}

Sequence rook(int d, int count) { return {0, engine::diagonal_terms(d, count - 1).terms}; }

// a(n, n) in 2D from 1/2 + (1 - x) / (2 sqrt(1 - 10x + 9x^2)); the series
// f = (1 - 10x + 9x^2)^(-1/2) obeys (n+1) f(n+1) = (10n+5) f(n) - 9n f(n-1).
Sequence closed_form_2d(int count) {
  std::vector<BigInt> f{1, 5};
  while (static_cast<int>(f.size()) < count) {
    const long n = static_cast<long>(f.size()) - 1;
    BigInt next = (10 * n + 5) * f[static_cast<std::size_t>(n)] - 9 * n * f[static_cast<std::size_t>(n - 1)];
    f.push_back(next / (n + 1));
  }
  Sequence s;
  for (int n = 0; n < count; ++n) s.terms.push_back(n == 0 ? BigInt(1) : BigInt((f[n] - f[n - 1]) / 2));
  return s;
}

}  // namespace

TEST_CASE("closed-form oracle agrees with the fast engine") {
  CHECK(closed_form_2d(40) == rook(2, 40));
}

TEST_CASE("2D recurrence from 25 terms") {
  auto report = guess_univariate(rook(2, 25), 4, 4, 8);
  REQUIRE(report.found);
  CHECK(*report.found == rec2d());
  CHECK(report.order == 2);
  CHECK(report.degree == 1);
  CHECK(report.margin == 8);
}

TEST_CASE("3D recurrence from 25 terms") {
  auto report = guess_univariate(rook(3, 25), 4, 6, 2);
  REQUIRE(report.found);
  CHECK(*report.found == rec3d());
  CHECK(report.found->valid_from == 0);
}

TEST_CASE("4D recurrence has order 4 and degree 9") {
  auto report = guess_univariate(rook(4, 80), 6, 12, 10);
  REQUIRE(report.found);
  const auto s = recurrence_stats(*report.found);
  CHECK(s.order == 4);
  CHECK(s.degree == 9);
  CHECK(s.maxint_digits == 12);
  CHECK(s.maxint_expanded_digits == 13);
  CHECK(!check_recurrence(*report.found, rook(4, 80)));
}

TEST_CASE("1D: a(n+1) = 2 a(n) from n = 1") {
  auto report = guess_univariate(rook(1, 30), 3, 3, 8);
  REQUIRE(report.found);
  CHECK(*report.found == rec_of({{-2}, {1}}, 1));
}

TEST_CASE("constant sequence") {
  Sequence s{0, std::vector<BigInt>(20, 7)};
  auto report = guess_univariate(s, 3, 3, 8);
  REQUIRE(report.found);
  CHECK(*report.found == rec_of({{-1}, {1}}));
}

TEST_CASE("no recurrence in a small grid") {
  // 2^(n^2) is not P-finite.
  Sequence s;
  for (unsigned long n = 0; n < 30; ++n) {
    BigInt x;
    mpz_ui_pow_ui(x.get_mpz_t(), 2, n * n);
    s.terms.push_back(x);
  }
  auto report = guess_univariate(s, 2, 2, 8);
  CHECK(!report.found);
  for (const auto& t : report.tried) CHECK(t.status != "found");
}

TEST_CASE("too few terms for any ansatz") {
  try {
    guess_univariate(rook(2, 5), 4, 4, 8);
    FAIL("expected insufficient-terms");
  } catch (const Error& e) {
    CHECK(e.kind() == "insufficient-terms");
  }
}

TEST_CASE("minimality: every earlier cell of the grid was rejected") {
  auto report = guess_univariate(rook(3, 40), 4, 6, 8);
  REQUIRE(report.found);
  REQUIRE(!report.tried.empty());
  CHECK(report.tried.back().status == "found");
  for (std::size_t k = 0; k + 1 < report.tried.size(); ++k) {
    const auto& t = report.tried[k];
    CHECK(t.status != "found");
    CHECK((t.order < 3 || (t.order == 3 && t.degree < 4)));
  }
  // Order-first visits all degrees of orders 1 and 2 before order 3.
  std::size_t low = 0;
  for (const auto& t : report.tried) low += t.order < 3;
  CHECK(low == 2 * 7);
}

TEST_CASE("normalization is canonical") {
  const auto base = rook(3, 30);
  auto a = guess_univariate(base, 4, 6, 4);
  Sequence scaled = base;
  for (auto& x : scaled.terms) x *= -6;
  auto b = guess_univariate(scaled, 4, 6, 4);
  GuessOptions exact;
  exact.modular = false;
  auto c = guess_univariate(base, 4, 6, 4, exact);
  GuessOptions four;
  four.workers = 4;
  auto d = guess_univariate(base, 4, 6, 4, four);
  REQUIRE(a.found);
  CHECK(b.found == a.found);
  CHECK(c.found == a.found);
  CHECK(d.found == a.found);
  CHECK(normalize(rec_of({scale(-4, {0, 9}), scale(-4, {-14, -10}), scale(-4, {2, 1})})) == rec2d());
  // A vanishing p_0 is shifted out.
  CHECK(normalize(rec_of({{}, {0, 9}, {-14, -10}, {2, 1}})) == rec_of({{-9, 9}, {-4, -10}, {1, 1}}, 1));
}

TEST_CASE("shifted offset") {
  Sequence s = rook(2, 30);
  s.terms.erase(s.terms.begin(), s.terms.begin() + 5);
  s.offset = 5;
  auto report = guess_univariate(s, 3, 3, 6);
  REQUIRE(report.found);
  CHECK(!check_recurrence(rec2d(), s));
  CHECK(report.found->order() == 2);
  CHECK(!check_recurrence(*report.found, rook(2, 30)));
}

TEST_CASE("check_recurrence") {
  const auto terms = rook(2, 12);
  CHECK(!check_recurrence(rec2d(), terms));
  CHECK(!check_recurrence(rec3d(), rook(3, 12)));
  auto tampered = terms;
  tampered.terms[2] = 15;
  auto bad = check_recurrence(rec2d(), tampered);
  REQUIRE(bad);
  CHECK(*bad == 0);
  tampered = terms;
  tampered.terms[8] += 1;
  CHECK(check_recurrence(rec2d(), tampered) == std::optional<long>(6));
}

TEST_CASE("extend_with_recurrence") {
  Sequence seeds{0, {1, 2, 14}};
  auto ext = extend_with_recurrence(rec2d(), seeds, 5);
  CHECK(ext.terms.back() == 6802);
  CHECK(ext == rook(2, 6));

  auto long_run = extend_with_recurrence(rec2d(), seeds, 1599);
  CHECK(long_run.terms.size() == 1600);
  CHECK(long_run == closed_form_2d(1600));

  auto three = extend_with_recurrence(rec3d(), Sequence{0, {1, 6, 222}}, 5);
  CHECK(three.terms.back() == 25267236);

  // p_2 = n + 2 never divides here: the seeds are off the true sequence.
  CHECK_THROWS_AS(extend_with_recurrence(rec2d(), Sequence{0, {1, 1, 1}}, 6), Error);
  // The relation starts at n = 1, so a(0) alone is not enough.
  CHECK_THROWS_AS(extend_with_recurrence(rec_of({{-2}, {1}}, 1), Sequence{0, {1}}, 4), Error);
  CHECK(extend_with_recurrence(rec_of({{-2}, {1}}, 1), Sequence{0, {1, 1}}, 4).terms ==
        std::vector<BigInt>{1, 1, 2, 4, 8});
}

TEST_CASE("guess, extend and check to n = 200") {
  for (int d : {2, 3}) {
    auto report = guess_univariate(rook(d, 25), 4, 6, 2);
    REQUIRE(report.found);
    auto ext = extend_with_recurrence(*report.found, rook(d, d + 1), 199);
    CHECK(ext.terms.size() == 200);
    CHECK(!check_recurrence(*report.found, ext));
    if (d == 2) CHECK(ext == closed_form_2d(200));
    if (d == 3) {
      Sequence head{0, {ext.terms.begin(), ext.terms.begin() + 60}};
      CHECK(head == rook(3, 60));
    }
  }
}

TEST_CASE("recurrence stats") {
  auto s2 = recurrence_stats(rec2d());
  CHECK(s2.order == 2);
  CHECK(s2.degree == 1);
  CHECK(s2.maxint_digits == 2);
  auto s3 = recurrence_stats(rec3d());
  CHECK(s3.order == 3);
  CHECK(s3.degree == 4);
  CHECK(s3.maxint_digits == 6);
  auto r5 = guess_univariate(rook(5, 145), 6, 22, 12);
  REQUIRE(r5.found);
  auto s5 = recurrence_stats(*r5.found);
  CHECK(s5.order == 5);
  CHECK(s5.degree == 18);
  CHECK(s5.maxint_digits == 31);
}

TEST_CASE("property: rational roots of products of linear factors") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9), mult(1, 3), count(0, 4), pick(0, 2);
  const std::vector<Coeffs> irreducible = {{1}, {1, 0, 1}, {3, 1, 1, 1}};  // 1, n^2+1, n^3+n^2+n+3
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<BigRat> roots;
    std::vector<std::pair<Coeffs, int>> factors;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      BigRat r = make_rat(num(rng), den(rng));
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
      factors.push_back({{-r.get_num(), r.get_den()}, mult(rng)});
    }
    const Coeffs& rest = irreducible[static_cast<std::size_t>(pick(rng))];
    const BigInt c = (trial % 2 ? -1 : 1) * (1 + trial % 5);
    Coeffs p = scale(c, rest);
    for (const auto& [f, m] : factors)
      for (int e = 0; e < m; ++e) p = mul(p, f);
    std::sort(roots.begin(), roots.end());
    const Poly poly(p);
    CHECK(rational_roots(poly) == roots);

    const auto split = split_linear_factors(poly);
    Poly back = Poly::constant(split.content) * split.cofactor;
    for (const auto& [f, m] : split.linear)
      for (int e = 0; e < m; ++e) back = back * f;
    CHECK(back == poly);
    CHECK(split.linear.size() == roots.size());
    CHECK(split.cofactor.degree() == static_cast<int>(rest.size()) - 1);
    for (const auto& [f, m] : split.linear) {
      CHECK(f.degree() == 1);
      CHECK(f.leading() > 0);
    }
  }
}
