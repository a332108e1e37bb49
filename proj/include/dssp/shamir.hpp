#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dssp/field.hpp"

namespace dssp {

/// Parameters of a (k, t) threshold split: k shares at the given
/// distinct nonzero evaluation points, any t of which reconstruct.
struct ShamirParams {
  std::size_t k = 0;
  std::size_t t = 0;
  std::vector<std::uint32_t> points;

  /// Points 1..k; needs q > k.
  static ShamirParams standard(const PrimeField& field, std::size_t k,
                               std::size_t t);
};

void validate(const PrimeField& field, const ShamirParams& params);

/// Shares d_i = P(points[i]) of the degree-(t-1) polynomial with
/// constant term `secret` and the caller-supplied t-1 higher
/// coefficients. Deterministic; randomness is the caller's business.
std::vector<std::uint32_t> shamir_encode(const PrimeField& field,
                                         std::uint32_t secret,
                                         const ShamirParams& params,
                                         std::span<const std::uint32_t> seed);

/// Reconstructs the secret (the value at zero) from at least t shares
/// given as (point, value) pairs with distinct points; uses the first t.
std::uint32_t shamir_decode(
    const PrimeField& field,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& shares,
    std::size_t t);

/// Value at zero of the unique polynomial of degree < points.size()
/// through (points[i], values[i]).
std::uint32_t lagrange_at_zero(const PrimeField& field,
                               std::span<const std::uint32_t> points,
                               std::span<const std::uint32_t> values);

}  // namespace dssp
