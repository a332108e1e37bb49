#pragma once

#include <cstdint>
#include <vector>

#include "dssp/errors.hpp"

namespace dssp {

// Tally of field operations executed on this thread. Used by the scaling
// tests and the bench command; counts are only meaningful for code that
// runs on a single thread (parallel kernels keep per-thread tallies that
// are never merged).
struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t inv = 0;
  std::uint64_t total() const { return mul + add + inv; }
};

namespace detail {
extern thread_local OpTally op_tally;
}

inline const OpTally& op_tally() { return detail::op_tally; }
inline void reset_op_tally() { detail::op_tally = OpTally{}; }

namespace detail {

// Operands must already be canonical (< q). q < 2^31 keeps every
// intermediate inside 64 bits.
inline std::uint32_t addmod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  ++op_tally.add;
  std::uint32_t s = a + b;
  return s >= q ? s - q : s;
}

inline std::uint32_t submod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  ++op_tally.add;
  return a >= b ? a - b : a + (q - b);
}

inline std::uint32_t negmod(std::uint32_t a, std::uint32_t q) {
  ++op_tally.add;
  return a == 0 ? 0 : q - a;
}

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  ++op_tally.mul;
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * b) % q);
}

}  // namespace detail

bool is_prime(std::uint64_t n);

// Prime factorization by trial division; returns the distinct primes.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

class PrimeField;

// One element of F_q in canonical form (value < q). The modulus rides
// along so that mixing elements of different fields is caught.
struct Fp {
  std::uint32_t value = 0;
  std::uint32_t q = 0;

  friend bool operator==(const Fp&, const Fp&) = default;
};

Fp operator+(Fp a, Fp b);
Fp operator-(Fp a, Fp b);
Fp operator*(Fp a, Fp b);
Fp operator-(Fp a);

/// Prime field F_q. Construction verifies primality; q must fit below
/// 2^31 so that products stay inside 64 bits before reduction.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return detail::addmod(a, b, q_);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return detail::submod(a, b, q_);
  }
  std::uint32_t neg(std::uint32_t a) const { return detail::negmod(a, q_); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return detail::mulmod(a, b, q_);
  }

  std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const;

  // Inverse by extended Euclid; throws ZeroInverse on 0.
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t reduce(std::uint64_t v) const {
    return static_cast<std::uint32_t>(v % q_);
  }
  std::uint32_t reduce_signed(std::int64_t v) const;

  Fp operator()(std::uint64_t v) const { return Fp{reduce(v), q_}; }
  Fp elem(std::uint64_t v) const { return (*this)(v); }
  Fp zero() const { return Fp{0, q_}; }
  Fp one() const { return Fp{1 % q_, q_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

/// Smallest g >= 2 whose multiplicative order is exactly q-1, verified
/// through the prime factorization of q-1. Requires q >= 3.
Fp primitive_element(const PrimeField& field);

}  // namespace dssp
