#pragma once

#include <cstdint>

namespace dssp {

/// SplitMix64: tiny, fast, and byte-identical across platforms, which
/// is what the determinism contract of the CLI needs.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

/// Deterministic generator with keyed substreams so independent parts
/// of a protocol (one per user) never share a stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng keyed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix(seed);
    std::uint64_t a = mix.next();
    std::uint64_t b = mix.next();
    return Rng(a ^ (b + 0x9E3779B97F4A7C15ull * (stream + 1)));
  }

  std::uint64_t next_u64() { return gen_.next(); }

  /// Uniform draw from [0, q) by rejection below the largest multiple
  /// of q, so no residue is favored.
  std::uint32_t field_element(std::uint32_t q) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
    std::uint64_t v;
    do {
      v = gen_.next();
    } while (v >= limit);
    return static_cast<std::uint32_t>(v % q);
  }

 private:
  SplitMix64 gen_;
};

}  // namespace dssp
