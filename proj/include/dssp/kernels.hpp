#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dssp/field.hpp"

namespace dssp {

// Execution policy for the data-parallel kernels. Both variants produce
// bit-identical results; the serial one is the reference implementation
// and the only one whose op tallies are meaningful.
enum class Exec { Serial, Parallel };

// Process-wide default used by the high-level operations. Tests and the
// op-counting paths switch it to Serial.
Exec execution_mode();
void set_execution_mode(Exec mode);

namespace kernels {

// out = M x, with M row-major rows x cols.
void mat_vec(const PrimeField& f, std::span<const std::uint32_t> m,
             std::size_t rows, std::size_t cols,
             std::span<const std::uint32_t> x, std::span<std::uint32_t> out,
             Exec exec);

// out = A B, row-major, (ra x ca) times (ca x cb).
void mat_mul(const PrimeField& f, std::span<const std::uint32_t> a,
             std::size_t ra, std::size_t ca,
             std::span<const std::uint32_t> b, std::size_t cb,
             std::span<std::uint32_t> out, Exec exec);

struct ReduceResult {
  std::size_t rank = 0;
  // Determinant of the leading lead_cols block; meaningful only when
  // rows == lead_cols.
  std::uint32_t det = 0;
};

// In-place Gauss-Jordan on the leading lead_cols columns of a rows x cols
// row-major array. Pivots are the first nonzero entry scanned downward,
// so the reduction is deterministic for every execution policy.
ReduceResult row_reduce(const PrimeField& f, std::vector<std::uint32_t>& a,
                        std::size_t rows, std::size_t cols,
                        std::size_t lead_cols, Exec exec);

}  // namespace kernels
}  // namespace dssp
