#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dssp/field.hpp"

namespace dssp {

/// Polynomial over F_q, constant term first. Kept trimmed so the degree
/// is coefficients.size() - 1 (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial(PrimeField field, std::vector<std::uint32_t> coefficients);

  const PrimeField& field() const { return field_; }
  const std::vector<std::uint32_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  std::uint32_t evaluate(std::uint32_t x) const;  // Horner

  Polynomial operator-(const Polynomial& other) const;
  Polynomial scaled(std::uint32_t factor) const;

 private:
  PrimeField field_;
  std::vector<std::uint32_t> coeffs_;
};

/// Monic gcd by Euclid's algorithm.
Polynomial poly_gcd(Polynomial a, Polynomial b);

/// Remainder of a mod b (b nonzero).
Polynomial poly_mod(const Polynomial& a, const Polynomial& b);

/// x^m - 1 over the field.
Polynomial cyclic_modulus(const PrimeField& field, std::size_t m);

/// Whether the m x m circulant whose associated polynomial has the given
/// first-row coefficients (v_1 + v_2 x + ... + v_k x^{k-1}) is
/// nonsingular, decided by gcd(x^m - 1, V(x)) = 1.
bool circulant_nonsingular(const PrimeField& field,
                           std::span<const std::uint32_t> first_row,
                           std::size_t m);

}  // namespace dssp
