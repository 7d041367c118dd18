#include "rookwalk/rook_engine.hpp"

#include <atomic>
#include <thread>

#include "rookwalk/error.hpp"

namespace rookwalk::engine {

namespace {

inline void addmul_si(mpz_ptr acc, mpz_srcptr x, long c) {
  if (c > 0)
    mpz_addmul_ui(acc, x, static_cast<unsigned long>(c));
  else if (c < 0)
    mpz_submul_ui(acc, x, static_cast<unsigned long>(-c));
}

[[noreturn]] void corrupt(long j, long l) {
  throw Error("corrupt-grid", "four-term recurrence not divisible by l at (j, l) = (" + std::to_string(j) + ", " +
                                  std::to_string(l) + ")");
}

// Runs `job(i)` for i in [0, count) on up to `workers` threads.
template <class Job>
void parallel_for(std::size_t count, unsigned workers, Job job) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers && w < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        if (failed) return;
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

BigInt step_recurrence(long j, long l, const std::function<BigInt(long, long)>& grid) {
  if (l < 1) throw Error("invalid-argument", "step_recurrence needs l >= 1");
  auto a = [&](long jj, long ll) -> BigInt { return (jj < 0 || ll < 0) ? BigInt(0) : grid(jj, ll); };
  BigInt acc = (j - 1) * a(j - 1, l - 1) + (j + 1) * a(j + 1, l - 1) + (2 - l) * a(j, l - 2) +
               (2 * l - 2 * j - 2) * a(j, l - 1);
  BigInt q;
  if (mpz_tdiv_q_ui(q.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(l)) != 0) corrupt(j, l);
  return q;
}

std::vector<BigInt> near_diagonal_column(int dim, int n, int max_j, std::uint64_t* cell_updates) {
  if (dim < 1) throw Error("invalid-argument", "dimension must be positive");
  if (n < 0 || max_j < 0) throw Error("invalid-argument", "indices must be nonnegative");
  const long top = static_cast<long>(max_j) + static_cast<long>(dim - 1) * n;

  // One-dimensional base: compositions, a(0) = 1, a(j) = 2^(j-1).
  std::vector<BigInt> column(static_cast<std::size_t>(top) + 1);
  column[0] = 1;
  for (long j = 1; j <= top; ++j) mpz_ui_pow_ui(column[static_cast<std::size_t>(j)].get_mpz_t(), 2, static_cast<unsigned long>(j - 1));

  std::uint64_t updates = 0;
  std::vector<BigInt> row_m2, row_m1, row;
  BigInt acc;
  for (int k = 1; k < dim; ++k) {
    // Grid over (j, l) with base row l = 0 equal to the current column;
    // the next column is row l = n, by symmetry of the last two coordinates.
    if (n == 0) break;
    const long extent0 = static_cast<long>(column.size()) - 1;
    row_m2.clear();
    row_m1 = std::move(column);
    for (long l = 1; l <= n; ++l) {
      const long extent = extent0 - l;
      row.resize(static_cast<std::size_t>(extent) + 1);
      for (long j = 0; j <= extent; ++j) {
        const std::size_t uj = static_cast<std::size_t>(j);
        mpz_mul_si(acc.get_mpz_t(), row_m1[uj + 1].get_mpz_t(), j + 1);
        if (j >= 1) addmul_si(acc.get_mpz_t(), row_m1[uj - 1].get_mpz_t(), j - 1);
        if (l >= 2) addmul_si(acc.get_mpz_t(), row_m2[uj].get_mpz_t(), 2 - l);
        addmul_si(acc.get_mpz_t(), row_m1[uj].get_mpz_t(), 2 * l - 2 * j - 2);
        if (mpz_tdiv_q_ui(row[uj].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(l)) != 0) corrupt(j, l);
      }
      updates += static_cast<std::uint64_t>(extent + 1);
      std::swap(row_m2, row_m1);
      std::swap(row_m1, row);
    }
    column = std::move(row_m1);
  }
  column.resize(static_cast<std::size_t>(max_j) + 1);
  if (cell_updates) *cell_updates += updates;
  return column;
}

DiagonalSeries diagonal_terms(int dim, int max_n, unsigned workers) {
  if (dim < 1) throw Error("invalid-argument", "dimension must be positive");
  if (max_n < 0) throw Error("invalid-argument", "term count must be nonnegative");
  DiagonalSeries out;
  out.dim = dim;
  out.terms.resize(static_cast<std::size_t>(max_n) + 1);
  std::vector<std::uint64_t> updates(out.terms.size(), 0);
  // Largest n first keeps the threads balanced.
  parallel_for(out.terms.size(), workers, [&](std::size_t i) {
    const int n = max_n - static_cast<int>(i);
    out.terms[static_cast<std::size_t>(n)] = near_diagonal_column(dim, n, n, &updates[static_cast<std::size_t>(n)])[static_cast<std::size_t>(n)];
  });
  for (auto u : updates) out.cell_updates += u;
  return out;
}

SliceTable slice_table(int dim, int max_n, int max_m, unsigned workers) {
  if (dim < 2) throw Error("invalid-argument", "slice tables need dimension >= 2");
  if (max_n < 0 || max_m < 0) throw Error("invalid-argument", "slice bounds must be nonnegative");
  SliceTable t;
  t.dim = dim;
  t.max_n = max_n;
  t.max_m = max_m;
  t.values.resize((static_cast<std::size_t>(max_n) + 1) * (static_cast<std::size_t>(max_m) + 1));
  parallel_for(static_cast<std::size_t>(max_n) + 1, workers, [&](std::size_t i) {
    const int n = max_n - static_cast<int>(i);
    auto col = near_diagonal_column(dim, n, max_m);
    for (int m = 0; m <= max_m; ++m) t.at(n, m) = std::move(col[static_cast<std::size_t>(m)]);
  });
  return t;
}

FixedNSeries fixed_n_counts(int n, int dmax, unsigned workers) {
  if (n < 0) throw Error("invalid-argument", "n must be nonnegative");
  if (dmax < 1) throw Error("invalid-argument", "dmax must be positive");
  FixedNSeries out;
  out.n = n;
  out.terms.resize(static_cast<std::size_t>(dmax));
  parallel_for(out.terms.size(), workers, [&](std::size_t i) {
    const int d = dmax - static_cast<int>(i);
    out.terms[static_cast<std::size_t>(d - 1)] = near_diagonal_column(d, n, n)[static_cast<std::size_t>(n)];
  });
  return out;
}

void write_tsv(std::ostream& os, const SliceTable& table) {
  for (int n = 0; n <= table.max_n; ++n)
    for (int m = 0; m <= table.max_m; ++m) os << n << '\t' << m << '\t' << table.at(n, m).get_str() << '\n';
}

}  // namespace rookwalk::engine
