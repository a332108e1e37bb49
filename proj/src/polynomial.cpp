#include "dssp/polynomial.hpp"

namespace dssp {

namespace {

void trim(std::vector<std::uint32_t>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

}  // namespace

Polynomial::Polynomial(PrimeField field, std::vector<std::uint32_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= field_.modulus();
  trim(coeffs_);
}

std::uint32_t Polynomial::evaluate(std::uint32_t x) const {
  x %= field_.modulus();
  std::uint32_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = field_.add(field_.mul(acc, x), *it);
  }
  return acc;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  if (field_ != other.field_) throw FieldMismatchError("polynomial subtract");
  std::vector<std::uint32_t> out(std::max(coeffs_.size(),
                                          other.coeffs_.size()),
                                 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t a = i < coeffs_.size() ? coeffs_[i] : 0;
    std::uint32_t b = i < other.coeffs_.size() ? other.coeffs_[i] : 0;
    out[i] = field_.sub(a, b);
  }
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::scaled(std::uint32_t factor) const {
  std::vector<std::uint32_t> out(coeffs_);
  for (auto& c : out) c = field_.mul(c, factor);
  return Polynomial(field_, std::move(out));
}

Polynomial poly_mod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidParameterError("poly_mod by zero");
  const PrimeField& f = a.field();
  std::vector<std::uint32_t> rem(a.coefficients());
  const auto& bc = b.coefficients();
  const std::uint32_t lead_inv = f.inv(bc.back());
  while (rem.size() >= bc.size()) {
    const std::uint32_t factor = f.mul(rem.back(), lead_inv);
    const std::size_t shift = rem.size() - bc.size();
    for (std::size_t i = 0; i < bc.size(); ++i) {
      rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, bc[i]));
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.empty()) break;
  }
  return Polynomial(f, std::move(rem));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  const PrimeField f = a.field();
  while (!b.is_zero()) {
    Polynomial r = poly_mod(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    a = a.scaled(f.inv(a.coefficients().back()));  // monic
  }
  return a;
}

Polynomial cyclic_modulus(const PrimeField& field, std::size_t m) {
  std::vector<std::uint32_t> coeffs(m + 1, 0);
  coeffs[0] = field.modulus() - 1;  // -1
  coeffs[m] = 1;
  return Polynomial(field, std::move(coeffs));
}

bool circulant_nonsingular(const PrimeField& field,
                           std::span<const std::uint32_t> first_row,
                           std::size_t m) {
  if (m == 0) throw InvalidParameterError("circulant order must be positive");
  Polynomial v(field,
               std::vector<std::uint32_t>(first_row.begin(), first_row.end()));
  if (v.is_zero()) return false;
  Polynomial g = poly_gcd(cyclic_modulus(field, m), v);
  return g.degree() == 0;
}

}  // namespace dssp
