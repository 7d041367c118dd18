#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rookwalk/algebra/number.hpp"

namespace rookwalk {

/// Univariate integer polynomial, coefficients in ascending powers.
/// The stored list never ends in a zero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<BigInt> coeffs, std::string var = "n");

  static Poly constant(const BigInt& c, std::string var = "n");
  /// c * var^k
  static Poly monomial(const BigInt& c, int k, std::string var = "n");

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const std::string& var() const { return var_; }
  /// Coefficient of var^k (zero beyond the degree).
  BigInt coeff(int k) const;
  /// Leading coefficient; zero for the zero polynomial.
  BigInt leading() const;

  BigInt operator()(const BigInt& x) const;
  BigRat operator()(const BigRat& x) const;

  /// p(var + s)
  Poly shifted(long s) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const BigInt& c, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();

  std::vector<BigInt> coeffs_;
  std::string var_ = "n";
};

BigRat poly_eval(const Poly& p, const BigRat& x);

/// gcd of the integer coefficients.
BigInt content(const Poly& p);

/// Monic-up-to-content gcd in Z[x]: primitive, positive leading coefficient.
/// gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// a / b in Z[x]; throws if b does not divide a exactly.
Poly exact_quotient(const Poly& a, const Poly& b);

/// Approximations of all complex roots (with multiplicity) by simultaneous
/// Aberth iteration in long double. Empty for constants.
std::vector<std::complex<long double>> approximate_roots(const Poly& p);

/// Distinct rational roots, ascending, found exactly (real root isolation
/// on the square-free part, then a rational check per isolating interval).
std::vector<BigRat> rational_roots(const Poly& p);

/// p = content * prod linear[k].first ^ linear[k].second * cofactor, where the
/// linear factors are primitive (q n - r, q > 0) and cofactor has no rational
/// root. The sign of p is carried by content.
struct LinearSplit {
  BigInt content;
  std::vector<std::pair<Poly, int>> linear;
  Poly cofactor;
};
LinearSplit split_linear_factors(const Poly& p);

/// Bivariate integer polynomial with sparse storage; zero coefficients are
/// never stored.
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (power of first var, power of second var)

  BiPoly() = default;
  BiPoly(std::string var1, std::string var2) : var1_(std::move(var1)), var2_(std::move(var2)) {}

  void set(int i, int j, const BigInt& c);
  BigInt coeff(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for zero.
  int total_degree() const;
  const std::map<Key, BigInt>& terms() const { return terms_; }
  const std::string& var1() const { return var1_; }
  const std::string& var2() const { return var2_; }

  BigRat operator()(const BigRat& x, const BigRat& y) const;
  BigInt operator()(const BigInt& x, const BigInt& y) const;

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Key, BigInt> terms_;
  std::string var1_ = "n";
  std::string var2_ = "m";
};

BigRat bipoly_eval(const BiPoly& p, const BigRat& x, const BigRat& y);

}  // namespace rookwalk
