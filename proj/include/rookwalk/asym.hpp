#pragma once

// Asymptotics of P-finite sequences: the closed-form leading constant for
// rook diagonals, Birkhoff-type expansions
//
//   a(n) ~ C lambda^n n^theta (1 + c_1/n + ... + c_K/n^K),
//
// computed exactly from a recurrence, and MPFR-backed ratio checks.

#include <ostream>
#include <string>
#include <vector>

#include "rookwalk/algebra/number.hpp"
#include "rookwalk/guess.hpp"

namespace rookwalk::asym {

struct AsymptoticExpansion {
  BigRat lambda;
  BigRat theta;
  std::vector<BigRat> c;  // c[k - 1] = c_k, k = 1 .. K
  int order() const { return static_cast<int>(c.size()); }
  friend bool operator==(const AsymptoticExpansion&, const AsymptoticExpansion&) = default;
};

/// sqrt(alpha_d) (n pi)^((1 - d)/2) ((d + 1)^d)^n.
struct LeadingConstant {
  int dim = 0;
  BigRat alpha;
  BigInt base() const;  // (d + 1)^d
  BigRat theta() const { return make_rat(1 - dim, 2); }
  std::string describe() const;
};

/// alpha_d = d^(d+2) / ((d+2)^(d-1) (d+1)^2 2^(d-1)).
LeadingConstant leading_constant(int d);

/// Exact expansion through c_K. Throws Error("unsupported-case") unless the
/// characteristic polynomial sum_i lc(p_i) z^i has a unique root of largest
/// modulus that is simple, rational and positive.
AsymptoticExpansion birkhoff_expand(const guess::Recurrence& rec, int K);

/// Coefficients of t^0 .. t^s_max (t = 1/n) of
/// sum_i p_i(n) lambda^i (1 + i t)^theta sum_k c_k t^k (1 + i t)^-k, scaled by
/// n^-deg. A correct expansion of order K gives zeros through t^(K+1).
std::vector<BigRat> expansion_residuals(const guess::Recurrence& rec, const AsymptoticExpansion& e, int s_max);

/// The closed forms c_1(d), c_2(d) (k = 1 or 2, d >= 2).
BigRat symbolic_c(int k, int d);

/// An enclosure [lo, hi] computed with outward rounding.
struct Enclosure {
  std::string lo, hi;       // decimal, lo rounded down and hi rounded up
  double deviation = 0;     // upper bound on |x - 1|
  double distance_lo = 0;   // lower bound on |x - 1| (0 if the enclosure contains 1)
  int precision_bits = 0;
  std::string rounding = "outward (MPFR round-down for lower ends, round-up for upper ends)";
};

/// [sqrt(alpha) (n pi)^theta lambda^n (1 + sum_k c_k n^-k)] / a(n).
/// The expansion's lambda and theta must match the constant; every quantity
/// except pi and the square root is exact. Throws Error("insufficient-precision")
/// when the enclosure is wider than 2^(-precision/2).
Enclosure ratio_check(const guess::Sequence& terms, const AsymptoticExpansion& e, const LeadingConstant& constant,
                      long n, int precision_bits = 256);

/// e^(n-1) (nd)! / (n!)^d; n = 0 is the convention value 1.
struct FixedNAsymptotic {
  int n = 0, d = 0;
  BigInt rational_part;  // (nd)! / (n!)^d, an integer
  int e_power = 0;       // n - 1, or 0 for n = 0
  std::string describe() const;
};
FixedNAsymptotic fixedn_asym(int n, int d);

/// Decimal enclosure of e^(n-1) (nd)!/(n!)^d at the given precision.
Enclosure fixedn_value(const FixedNAsymptotic& f, int precision_bits = 256);

/// w / (e^(n-1) (nd)!/(n!)^d).
Enclosure fixedn_ratio(const BigInt& w, const FixedNAsymptotic& f, int precision_bits = 256);

/// Least-squares constant C for a(n) ~ C lambda^n n^theta (1 + ...) over
/// n_from .. n_to: the mean of the per-term quotients, as a decimal string.
std::string fit_constant(const guess::Sequence& terms, const AsymptoticExpansion& e, long n_from, long n_to,
                         int precision_bits = 256);

/// "lambda:", "theta:" and "c<k>:" lines.
void write_expansion(std::ostream& os, const AsymptoticExpansion& e);

}  // namespace rookwalk::asym
