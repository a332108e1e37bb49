#include "dssp/kernels.hpp"

#include <atomic>
#include <cassert>

namespace dssp {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec execution_mode() { return g_exec.load(std::memory_order_relaxed); }
void set_execution_mode(Exec mode) {
  g_exec.store(mode, std::memory_order_relaxed);
}

namespace kernels {

void mat_vec(const PrimeField& f, std::span<const std::uint32_t> m,
             std::size_t rows, std::size_t cols,
             std::span<const std::uint32_t> x, std::span<std::uint32_t> out,
             Exec exec) {
  assert(m.size() == rows * cols && x.size() == cols && out.size() == rows);
  const std::uint64_t q = f.modulus();
  if (exec == Exec::Serial) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::uint32_t acc = 0;
      const std::uint32_t* row = m.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) {
        acc = f.add(acc, f.mul(row[c], x[c]));
      }
      out[r] = acc;
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint32_t* row = m.data() + r * cols;
    // Accumulate in 64 bits and reduce lazily: q < 2^31 leaves room for
    // 4 products before overflow.
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      acc += static_cast<std::uint64_t>(row[c]) * x[c];
      if ((c & 3u) == 3u) acc %= q;
    }
    out[r] = static_cast<std::uint32_t>(acc % q);
  }
}

void mat_mul(const PrimeField& f, std::span<const std::uint32_t> a,
             std::size_t ra, std::size_t ca,
             std::span<const std::uint32_t> b, std::size_t cb,
             std::span<std::uint32_t> out, Exec exec) {
  assert(a.size() == ra * ca && b.size() == ca * cb && out.size() == ra * cb);
  const std::uint64_t q = f.modulus();
  if (exec == Exec::Serial) {
    for (std::size_t r = 0; r < ra; ++r) {
      for (std::size_t c = 0; c < cb; ++c) {
        std::uint32_t acc = 0;
        for (std::size_t t = 0; t < ca; ++t) {
          acc = f.add(acc, f.mul(a[r * ca + t], b[t * cb + c]));
        }
        out[r * cb + c] = acc;
      }
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < ra; ++r) {
    for (std::size_t c = 0; c < cb; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < ca; ++t) {
        acc += static_cast<std::uint64_t>(a[r * ca + t]) * b[t * cb + c];
        if ((t & 3u) == 3u) acc %= q;
      }
      out[r * cb + c] = static_cast<std::uint32_t>(acc % q);
    }
  }
}

ReduceResult row_reduce(const PrimeField& f, std::vector<std::uint32_t>& a,
                        std::size_t rows, std::size_t cols,
                        std::size_t lead_cols, Exec exec) {
  assert(a.size() == rows * cols && lead_cols <= cols);
  ReduceResult res;
  std::uint32_t det = 1 % f.modulus();
  bool det_negate = false;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < lead_cols && pivot_row < rows; ++col) {
    // First nonzero pivot downward; magnitudes mean nothing over F_q.
    std::size_t sel = pivot_row;
    while (sel < rows && a[sel * cols + col] == 0) ++sel;
    if (sel == rows) {
      det = 0;
      continue;
    }
    if (sel != pivot_row) {
      for (std::size_t c = col; c < cols; ++c) {
        std::swap(a[sel * cols + c], a[pivot_row * cols + c]);
      }
      det_negate = !det_negate;
    }
    const std::uint32_t pivot = a[pivot_row * cols + col];
    det = f.mul(det, pivot);
    const std::uint32_t pivot_inv = f.inv(pivot);
    for (std::size_t c = col; c < cols; ++c) {
      a[pivot_row * cols + c] = f.mul(a[pivot_row * cols + c], pivot_inv);
    }
    const std::uint32_t* prow = a.data() + pivot_row * cols;
    if (exec == Exec::Serial) {
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == pivot_row) continue;
        const std::uint32_t factor = a[r * cols + col];
        if (factor == 0) continue;
        std::uint32_t* row = a.data() + r * cols;
        for (std::size_t c = col; c < cols; ++c) {
          row[c] = f.sub(row[c], f.mul(factor, prow[c]));
        }
      }
    } else {
#pragma omp parallel for schedule(static)
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == pivot_row) continue;
        const std::uint32_t factor = a[r * cols + col];
        if (factor == 0) continue;
        std::uint32_t* row = a.data() + r * cols;
        const std::uint64_t q = f.modulus();
        for (std::size_t c = col; c < cols; ++c) {
          std::uint64_t v = row[c] + q * q;  // q*q < 2^62 keeps this positive
          v -= static_cast<std::uint64_t>(factor) * prow[c];
          row[c] = static_cast<std::uint32_t>(v % q);
        }
      }
    }
    ++pivot_row;
  }
  res.rank = pivot_row;
  if (pivot_row < lead_cols || lead_cols < rows) det = 0;
  if (det_negate) det = f.neg(det);
  res.det = (res.rank == lead_cols && rows == lead_cols) ? det : 0;
  return res;
}

}  // namespace kernels
}  // namespace dssp
