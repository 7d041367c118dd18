#include "rookwalk/algebra/matrix.hpp"

namespace rookwalk {

IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const BigRat& x = m(r, c);
      BigInt t = l / x.get_den();
      out(r, c) = t * x.get_num();
    }
  }
  return out;
}

bool annihilates(const IntMatrix& m, std::span<const BigInt> v) {
  if (v.size() != m.cols()) return false;
  BigInt acc;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (v[c] != 0) mpz_addmul(acc.get_mpz_t(), m(r, c).get_mpz_t(), v[c].get_mpz_t());
    if (acc != 0) return false;
  }
  return true;
}

bool annihilates(const RatMatrix& m, std::span<const BigInt> v) {
  if (v.size() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigRat acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace rookwalk
