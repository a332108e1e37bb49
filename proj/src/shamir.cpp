#include "dssp/shamir.hpp"

#include <string>

#include "dssp/polynomial.hpp"

namespace dssp {

ShamirParams ShamirParams::standard(const PrimeField& field, std::size_t k,
                                    std::size_t t) {
  if (field.modulus() <= k) {
    throw FieldTooSmallError("need q > k for k distinct nonzero points; q = " +
                             std::to_string(field.modulus()) + ", k = " +
                             std::to_string(k));
  }
  ShamirParams params;
  params.k = k;
  params.t = t;
  for (std::size_t i = 1; i <= k; ++i) {
    params.points.push_back(static_cast<std::uint32_t>(i));
  }
  validate(field, params);
  return params;
}

void validate(const PrimeField& field, const ShamirParams& params) {
  if (params.t < 1 || params.t > params.k) {
    throw InvalidParameterError("threshold must satisfy 1 <= t <= k");
  }
  if (params.points.size() != params.k) {
    throw InvalidParameterError("expected one evaluation point per share");
  }
  if (field.modulus() <= params.k) {
    throw FieldTooSmallError("field too small for " +
                             std::to_string(params.k) + " distinct points");
  }
  for (std::size_t i = 0; i < params.points.size(); ++i) {
    if (params.points[i] % field.modulus() == 0) {
      throw DuplicatePointError("evaluation point " + std::to_string(i + 1) +
                                " is zero");
    }
    for (std::size_t j = i + 1; j < params.points.size(); ++j) {
      if (params.points[i] % field.modulus() ==
          params.points[j] % field.modulus()) {
        throw DuplicatePointError("evaluation points " + std::to_string(i + 1) +
                                  " and " + std::to_string(j + 1) +
                                  " coincide");
      }
    }
  }
}

std::vector<std::uint32_t> shamir_encode(const PrimeField& field,
                                         std::uint32_t secret,
                                         const ShamirParams& params,
                                         std::span<const std::uint32_t> seed) {
  validate(field, params);
  if (seed.size() != params.t - 1) {
    throw InvalidParameterError("seed must supply exactly t-1 coefficients");
  }
  std::vector<std::uint32_t> coeffs;
  coeffs.reserve(params.t);
  coeffs.push_back(secret % field.modulus());
  for (std::uint32_t c : seed) coeffs.push_back(c % field.modulus());
  Polynomial p(field, std::move(coeffs));
  std::vector<std::uint32_t> shares;
  shares.reserve(params.k);
  for (std::uint32_t x : params.points) shares.push_back(p.evaluate(x));
  return shares;
}

std::uint32_t shamir_decode(
    const PrimeField& field,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& shares,
    std::size_t t) {
  if (t < 1) throw InvalidParameterError("threshold must be positive");
  if (shares.size() < t) {
    throw InsufficientSharesError("need " + std::to_string(t) +
                                  " shares, got " +
                                  std::to_string(shares.size()));
  }
  std::vector<std::uint32_t> points, values;
  for (std::size_t i = 0; i < t; ++i) {
    points.push_back(shares[i].first % field.modulus());
    values.push_back(shares[i].second % field.modulus());
  }
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (points[i] == points[j]) {
        throw DuplicatePointError("shares " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) +
                                  " use the same point");
      }
    }
  }
  return lagrange_at_zero(field, points, values);
}

std::uint32_t lagrange_at_zero(const PrimeField& field,
                               std::span<const std::uint32_t> points,
                               std::span<const std::uint32_t> values) {
  if (points.size() != values.size()) {
    throw InvalidParameterError("point/value count mismatch");
  }
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    // values[i] * prod_{j != i} x_j / (x_j - x_i)
    std::uint32_t num = 1 % field.modulus();
    std::uint32_t den = 1 % field.modulus();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      num = field.mul(num, points[j]);
      den = field.mul(den, field.sub(points[j], points[i]));
    }
    acc = field.add(acc,
                    field.mul(values[i], field.mul(num, field.inv(den))));
  }
  return acc;
}

}  // namespace dssp
