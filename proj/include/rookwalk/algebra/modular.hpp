#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rookwalk/algebra/number.hpp"

namespace rookwalk::modular {

/// i-th prime of the fixed descending list of primes below 2^31.
std::uint32_t word_prime(std::size_t i);
std::size_t word_prime_count();

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + (p - b);
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t reduce(const BigInt& x, std::uint32_t p);

/// Reduced row echelon form modulo p. Rows hold the nonzero reduced rows,
/// each with 1 at its pivot column.
struct Rref {
  std::size_t cols = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::uint32_t> rows;  // pivots.size() x cols, row-major

  std::size_t rank() const { return pivots.size(); }
  std::uint32_t at(std::size_t r, std::size_t c) const { return rows[r * cols + c]; }
};

/// In-place RREF of a dense rows x cols matrix of residues.
Rref rref(std::vector<std::uint32_t> a, std::size_t rows, std::size_t cols, std::uint32_t p);

/// Rational reconstruction of u mod m with |num|, den <= sqrt(m/2).
/// Returns false when no such fraction exists.
bool rational_reconstruct(const BigInt& u, const BigInt& m, BigRat& out);

}  // namespace rookwalk::modular
