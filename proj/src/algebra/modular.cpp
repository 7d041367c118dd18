#include "rookwalk/algebra/modular.hpp"

#include <stdexcept>

namespace rookwalk::modular {

namespace {

std::uint32_t pow_mod(std::uint32_t b, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, b, p);
    b = mul_mod(b, b, p);
    e >>= 1;
  }
  return r;
}

// Deterministic for n < 2^32 with bases 2, 7, 61.
bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 61u})
    if (n % q == 0) return n == q;
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t a : {2u, 7u, 61u}) {
    std::uint32_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

constexpr std::size_t kPrimeCount = 4096;

const std::vector<std::uint32_t>& prime_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> t;
    t.reserve(kPrimeCount);
    for (std::uint32_t n = 0x7fffffffu; t.size() < kPrimeCount; n -= 2)
      if (is_prime_u32(n)) t.push_back(n);
    return t;
  }();
  return table;
}

}  // namespace

std::uint32_t word_prime(std::size_t i) {
  const auto& t = prime_table();
  if (i >= t.size()) throw std::out_of_range("word_prime: prime list exhausted");
  return t[i];
}

std::size_t word_prime_count() { return kPrimeCount; }

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
  return pow_mod(a, p - 2, p);
}

std::uint32_t reduce(const BigInt& x, std::uint32_t p) {
  unsigned long r = mpz_fdiv_ui(x.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r);
}

Rref rref(std::vector<std::uint32_t> a, std::size_t rows, std::size_t cols, std::uint32_t p) {
  Rref out;
  out.cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = c; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
    std::uint32_t* pr = &a[r * cols];
    const std::uint32_t inv = inv_mod(pr[c], p);
    for (std::size_t k = c; k < cols; ++k) pr[k] = mul_mod(pr[k], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* pi = &a[i * cols];
      const std::uint32_t f = pi[c];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t k = c; k < cols; ++k)
        if (pr[k]) pi[k] = static_cast<std::uint32_t>((pi[k] + nf * pr[k]) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r * cols);
  out.rows = std::move(a);
  return out;
}

bool rational_reconstruct(const BigInt& u, const BigInt& m, BigRat& out) {
  // Half extended Euclid on (m, u): stop once the remainder drops below sqrt(m/2).
  BigInt bound;
  {
    BigInt half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  }
  BigInt r0 = m, r1 = u % m;
  if (r1 < 0) r1 += m;
  BigInt t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || t1 == 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  out = BigRat(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace rookwalk::modular
