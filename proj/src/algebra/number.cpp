#include "rookwalk/algebra/number.hpp"

namespace rookwalk {

BigInt content(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::vector<BigInt> normalize_primitive(std::vector<BigInt> v) {
  BigInt g = content(v);
  if (g == 0) return v;
  int sign = 0;
  for (const auto& x : v) {
    if (x != 0) {
      sign = sgn(x);
      break;
    }
  }
  if (sign < 0) g = -g;
  if (g != 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

std::vector<BigInt> primitive_from_rational(const std::vector<BigRat>& v) {
  BigInt l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    BigInt t = l / x.get_den();
    out.push_back(t * x.get_num());
  }
  return normalize_primitive(std::move(out));
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace rookwalk
