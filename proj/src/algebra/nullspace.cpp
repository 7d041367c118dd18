#include "rookwalk/algebra/nullspace.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "rookwalk/algebra/modular.hpp"

namespace rookwalk {

namespace {

thread_local ModularStats g_stats;

// Basis vectors from an echelon form: vector for free column f has x_f = 1,
// zero at every other free column, pivots solved by back substitution.
KernelBasis kernel_from_echelon(const IntMatrix& a, const std::vector<std::size_t>& pivots) {
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  KernelBasis basis;
  std::vector<BigRat> x(cols);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::fill(x.begin(), x.end(), BigRat(0));
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const std::size_t pc = pivots[k];
      if (pc > f) continue;  // stays zero
      BigRat s = 0;
      for (std::size_t j = pc + 1; j <= f; ++j)
        if (x[j] != 0 && a(k, j) != 0) s += a(k, j) * x[j];
      x[pc] = -s / a(k, pc);
      x[pc].canonicalize();
    }
    basis.push_back(primitive_from_rational(x));
  }
  return basis;
}

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

modular::Rref image_mod(const IntMatrix& m, std::uint32_t p) {
  std::vector<std::uint32_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = modular::reduce(m(r, c), p);
  return modular::rref(std::move(a), m.rows(), m.cols(), p);
}

}  // namespace

KernelBasis nullspace_exact(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  BigInt prev = 1, t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(piv, k), a(r, k));
    const BigInt& pv = a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const BigInt f = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        // a_ij <- (pv * a_ij - f * a_rj) / prev, exact by Sylvester's identity
        mpz_mul(t.get_mpz_t(), pv.get_mpz_t(), a(i, j).get_mpz_t());
        mpz_submul(t.get_mpz_t(), f.get_mpz_t(), a(r, j).get_mpz_t());
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = pv;
    pivots.push_back(c);
    ++r;
  }
  return kernel_from_echelon(a, pivots);
}

KernelBasis nullspace_exact(const RatMatrix& m) { return nullspace_exact(clear_denominators(m)); }

std::size_t kernel_dimension_mod(const IntMatrix& m, std::uint32_t p) {
  return m.cols() - image_mod(m, p).rank();
}

KernelBasis canonical_basis(const std::vector<std::vector<BigRat>>& vectors) {
  if (vectors.empty()) return {};
  std::vector<std::vector<BigRat>> rows = vectors;
  const std::size_t cols = rows.front().size();
  std::vector<bool> used(rows.size(), false);
  for (std::size_t c = cols; c-- > 0;) {
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!used[i] && rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    used[piv] = true;
    BigRat inv = 1 / rows[piv][c];
    for (auto& x : rows[piv]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == piv || rows[i][c] == 0) continue;
      BigRat f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        if (rows[piv][k] != 0) rows[i][k] -= f * rows[piv][k];
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!used[i]) continue;
    std::size_t last = cols;
    for (std::size_t c = cols; c-- > 0;)
      if (rows[i][c] != 0) {
        last = c;
        break;
      }
    order.emplace_back(last, i);
  }
  std::sort(order.begin(), order.end());
  KernelBasis out;
  for (auto [c, i] : order) out.push_back(primitive_from_rational(rows[i]));
  return out;
}

KernelBasis canonical_basis(const std::vector<std::vector<BigInt>>& vectors) {
  std::vector<std::vector<BigRat>> q;
  q.reserve(vectors.size());
  for (const auto& v : vectors) q.emplace_back(v.begin(), v.end());
  return canonical_basis(q);
}

KernelBasis nullspace_modular(const IntMatrix& m, unsigned workers) {
  g_stats = {};
  const std::size_t cols = m.cols();
  if (cols == 0) return {};
  workers = std::max(1u, workers);

  std::optional<std::vector<std::size_t>> best;  // pivot columns of the best image so far
  std::vector<std::size_t> free_cols;
  std::vector<BigInt> residues;  // combined values of -R[i][f] per (free f, pivot row i)
  BigInt modulus = 0;
  std::optional<std::vector<BigRat>> previous;

  std::size_t next_prime = 0;
  while (true) {
    std::vector<std::uint32_t> batch;
    for (unsigned w = 0; w < workers; ++w) batch.push_back(modular::word_prime(next_prime++));
    std::vector<modular::Rref> images(batch.size());
    if (batch.size() == 1) {
      images[0] = image_mod(m, batch[0]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t k = 0; k < batch.size(); ++k)
        pool.emplace_back([&, k] { images[k] = image_mod(m, batch[k]); });
      for (auto& t : pool) t.join();
    }

    for (std::size_t k = 0; k < batch.size(); ++k) {
      const std::uint32_t p = batch[k];
      const modular::Rref& img = images[k];
      ++g_stats.primes_used;
      if (img.rank() == cols) return {};
      if (best) {
        const bool better = img.rank() > best->size() ||
                            (img.rank() == best->size() && lex_less(img.pivots, *best));
        const bool same = img.pivots == *best;
        if (!better && !same) {
          ++g_stats.primes_discarded;
          continue;
        }
        if (better) {
          g_stats.primes_discarded += 1;
          best.reset();
        }
      }
      if (!best) {
        best = img.pivots;
        free_cols.clear();
        std::vector<bool> is_pivot(cols, false);
        for (auto c : img.pivots) is_pivot[c] = true;
        for (std::size_t c = 0; c < cols; ++c)
          if (!is_pivot[c]) free_cols.push_back(c);
        residues.assign(free_cols.size() * img.rank(), BigInt(0));
        modulus = 0;
        previous.reset();
      }

      const std::size_t rank = img.rank();
      if (modulus == 0) {
        for (std::size_t f = 0; f < free_cols.size(); ++f)
          for (std::size_t i = 0; i < rank; ++i) {
            std::uint32_t v = img.at(i, free_cols[f]);
            residues[f * rank + i] = v == 0 ? 0u : p - v;
          }
        modulus = p;
      } else {
        const std::uint32_t minv = modular::inv_mod(modular::reduce(modulus, p), p);
        for (std::size_t f = 0; f < free_cols.size(); ++f)
          for (std::size_t i = 0; i < rank; ++i) {
            std::uint32_t v = img.at(i, free_cols[f]);
            std::uint32_t target = v == 0 ? 0u : p - v;
            BigInt& x = residues[f * rank + i];
            std::uint32_t cur = modular::reduce(x, p);
            std::uint32_t delta = modular::mul_mod(modular::sub_mod(target, cur, p), minv, p);
            if (delta) mpz_addmul_ui(x.get_mpz_t(), modulus.get_mpz_t(), delta);
          }
        modulus *= p;
      }

      std::vector<BigRat> recon(residues.size());
      bool ok = true;
      for (std::size_t e = 0; e < residues.size() && ok; ++e) ok = modular::rational_reconstruct(residues[e], modulus, recon[e]);
      if (!ok) continue;
      if (previous && *previous == recon) {
        ++g_stats.verifications;
        std::vector<std::vector<BigRat>> vecs;
        bool verified = true;
        for (std::size_t f = 0; f < free_cols.size() && verified; ++f) {
          std::vector<BigRat> v(cols, BigRat(0));
          v[free_cols[f]] = 1;
          for (std::size_t i = 0; i < rank; ++i) v[(*best)[i]] = recon[f * rank + i];
          std::vector<BigInt> iv = primitive_from_rational(v);
          verified = annihilates(m, iv);
          vecs.push_back(std::move(v));
        }
        if (verified) return canonical_basis(vecs);
      }
      previous = std::move(recon);
    }
  }
}

KernelBasis nullspace_modular(const RatMatrix& m, unsigned workers) {
  return nullspace_modular(clear_denominators(m), workers);
}

const ModularStats& last_modular_stats() { return g_stats; }

KernelBasis restrict_kernel(const KernelBasis& basis, const IntMatrix& rows) {
  if (basis.empty() || rows.rows() == 0) return basis;
  IntMatrix proj(rows.rows(), basis.size());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t k = 0; k < basis.size(); ++k) {
      BigInt acc = 0;
      for (std::size_t c = 0; c < rows.cols(); ++c)
        if (basis[k][c] != 0) acc += rows(r, c) * basis[k][c];
      proj(r, k) = acc;
    }
  KernelBasis combos = nullspace_exact(proj);
  std::vector<std::vector<BigInt>> vecs;
  for (const auto& w : combos) {
    std::vector<BigInt> v(rows.cols(), BigInt(0));
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (w[k] != 0)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += w[k] * basis[k][c];
    vecs.push_back(std::move(v));
  }
  return canonical_basis(vecs);
}

}  // namespace rookwalk
