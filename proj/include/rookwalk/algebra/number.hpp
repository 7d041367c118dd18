#pragma once

// Arbitrary-precision integers and rationals. GMP's C++ classes already keep
// the canonical forms we rely on (no leading zero limbs, positive reduced
// denominators), so they are used directly.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace rookwalk {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

/// Number of decimal digits of |x| (0 has one digit).
inline std::size_t decimal_digits(const BigInt& x) {
  if (x == 0) return 1;
  BigInt a = abs(x);
  // mpz_sizeinbase may overshoot by one in base 10.
  std::string s = a.get_str();
  return s.size();
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline std::string to_string(const BigRat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// gcd of all entries; 0 for an all-zero (or empty) vector.
BigInt content(const std::vector<BigInt>& v);

/// Scales v to coprime integers with a positive first nonzero entry.
/// The zero vector is returned unchanged.
std::vector<BigInt> normalize_primitive(std::vector<BigInt> v);

/// Clears denominators of a rational vector and normalizes as above.
std::vector<BigInt> primitive_from_rational(const std::vector<BigRat>& v);

BigInt factorial(unsigned long n);

}  // namespace rookwalk
