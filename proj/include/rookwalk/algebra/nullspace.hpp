#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rookwalk/algebra/matrix.hpp"

namespace rookwalk {

/// Kernel basis. Every vector has coprime integer entries and a positive
/// first nonzero entry. The basis is the reduced one: vector k has its last
/// nonzero entry at the k-th free column and zeros at every other free
/// column, so it is unique for a given matrix.
using KernelBasis = std::vector<std::vector<BigInt>>;

/// Fraction-free (Bareiss) elimination followed by exact back substitution.
KernelBasis nullspace_exact(const IntMatrix& m);
KernelBasis nullspace_exact(const RatMatrix& m);

/// Same result as nullspace_exact, computed from images modulo word-size
/// primes combined by Chinese remaindering and rational reconstruction.
/// The reconstructed basis is verified exactly before it is returned.
/// `workers` threads reduce distinct primes concurrently; the result does
/// not depend on the worker count.
KernelBasis nullspace_modular(const IntMatrix& m, unsigned workers = 1);
KernelBasis nullspace_modular(const RatMatrix& m, unsigned workers = 1);

/// Kernel dimension of m reduced modulo p. Never smaller than the kernel
/// dimension over Q, so zero proves a trivial rational kernel.
std::size_t kernel_dimension_mod(const IntMatrix& m, std::uint32_t p);

/// Brings any spanning set of a subspace into the reduced form described
/// above (elimination from the last column backwards).
KernelBasis canonical_basis(const std::vector<std::vector<BigRat>>& vectors);
KernelBasis canonical_basis(const std::vector<std::vector<BigInt>>& vectors);

/// The subspace of span(basis) that also annihilates `rows`, in reduced form.
KernelBasis restrict_kernel(const KernelBasis& basis, const IntMatrix& rows);

/// Statistics of the last nullspace_modular call on this thread.
struct ModularStats {
  std::size_t primes_used = 0;
  std::size_t primes_discarded = 0;
  std::size_t verifications = 0;
};
const ModularStats& last_modular_stats();

}  // namespace rookwalk
