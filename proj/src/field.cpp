#include "dssp/field.hpp"

#include <string>

namespace dssp {

namespace detail {
thread_local OpTally op_tally;
}

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp,
                       std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Deterministic Miller-Rabin; this base set is exact for n < 3.3e24.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

void check_same_field(Fp a, Fp b) {
  if (a.q != b.q) {
    throw FieldMismatchError("operands live in F_" + std::to_string(a.q) +
                             " and F_" + std::to_string(b.q));
  }
}

}  // namespace

Fp operator+(Fp a, Fp b) {
  check_same_field(a, b);
  return Fp{detail::addmod(a.value, b.value, a.q), a.q};
}

Fp operator-(Fp a, Fp b) {
  check_same_field(a, b);
  return Fp{detail::submod(a.value, b.value, a.q), a.q};
}

Fp operator*(Fp a, Fp b) {
  check_same_field(a, b);
  return Fp{detail::mulmod(a.value, b.value, a.q), a.q};
}

Fp operator-(Fp a) { return Fp{detail::negmod(a.value, a.q), a.q}; }

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q < 2) {
    throw InvalidParameterError("field modulus must be >= 2, got " +
                                std::to_string(q));
  }
  if (q >= (1u << 31)) {
    throw InvalidParameterError("field modulus must be < 2^31, got " +
                                std::to_string(q));
  }
  if (!is_prime(q)) {
    throw InvalidParameterError("field modulus " + std::to_string(q) +
                                " is not prime");
  }
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exp) const {
  std::uint32_t r = 1 % q_;
  std::uint32_t b = base % q_;
  while (exp > 0) {
    if (exp & 1) r = mul(r, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  a %= q_;
  if (a == 0) throw ZeroInverseError{};
  ++detail::op_tally.inv;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q_, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t PrimeField::reduce_signed(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return static_cast<std::uint32_t>(r);
}

Fp primitive_element(const PrimeField& field) {
  const std::uint32_t q = field.modulus();
  if (q < 3) {
    throw InvalidParameterError(
        "primitive element requires q >= 3, got " + std::to_string(q));
  }
  const std::uint64_t order = q - 1;
  const auto primes = distinct_prime_factors(order);
  for (std::uint32_t g = 2; g < q; ++g) {
    bool primitive = true;
    for (std::uint64_t p : primes) {
      if (field.pow(g, order / p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return Fp{g, q};
  }
  // Unreachable for prime q >= 3: the unit group is cyclic.
  throw std::logic_error("no primitive element found");
}

}  // namespace dssp
