#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dssp/combinatorics.hpp"
#include "dssp/design.hpp"
#include "dssp/matrix.hpp"

namespace dssp {

enum class ProtocolKind { Sdssp, OptimalSo, NearlyOptimal };

std::string kind_name(ProtocolKind kind);
ProtocolKind kind_from_name(const std::string& name);

/// Sparse storing matrix: slot r (1-based) lives on node_of_slot[r-1].
struct StoringMatrix {
  std::vector<int> node_of_slot;

  std::size_t slot_count() const { return node_of_slot.size(); }
  int node(std::uint64_t slot) const {  // 1-based slot
    return node_of_slot.at(slot - 1);
  }
};

/// Everything needed to encode, place, and decode: the protocol kind,
/// its parameters, the access structure, the evaluation points, the
/// storing map, and the kind-specific encoder data.
struct ProtocolDescriptor {
  ProtocolKind kind = ProtocolKind::Sdssp;
  int n = 0;
  std::uint64_t m = 0;
  std::uint32_t q = 0;
  int k = 0;  // uniform access-set size; 0 for the per-user-size kind
  AccessStructure access;
  std::vector<std::uint32_t> points;          // shared evaluation points
  StoringMatrix storing;
  std::optional<Matrix> encoding_matrix;      // linear kind only
  std::vector<std::uint32_t> tail_mix;        // iterative kind: w row
  std::uint64_t h = 0;                        // stored slots
  std::uint64_t build_seed = 0;               // recorded by the CLI

  PrimeField field() const { return PrimeField(q); }

  /// Size of user j's access set (j is 1-based).
  std::size_t user_set_size(std::uint64_t j) const {
    return access.sets.at(j - 1).elements.size();
  }

  /// Slots user j's decoder reads, in evaluation-point order (1-based).
  std::vector<std::uint64_t> user_slots(std::uint64_t j) const;

  /// Evaluation points matching user_slots(j).
  std::vector<std::uint32_t> user_points(std::uint64_t j) const;

  /// Every slot stored on a node in user j's access set, ascending.
  std::vector<std::uint64_t> readable_slots(std::uint64_t j) const;

  /// Number of externally supplied random symbols one encode consumes.
  std::size_t seed_symbols() const;
};

// ---- builders --------------------------------------------------------

/// Independent per-user threshold split over a given Sperner access
/// structure. Stores |A_j| shares for user j, one on each of its nodes.
ProtocolDescriptor build_sdssp(int n, const AccessStructure& access,
                               std::uint32_t q);

/// True iff (q-1) divides none of i*m for i in [1..k]; a sufficient
/// condition for the coupled encoder system below to be nonsingular.
bool nonsingularity_precheck(std::uint32_t q, std::uint64_t m, int k);

/// The km x km coupled interpolation system: m blocks of point-power
/// rows next to cyclically shifted negative identities. Exposed for
/// tests and diagnostics.
Matrix optimal_system_matrix(const PrimeField& field, std::uint64_t m, int k);

/// Deterministic single-copy protocol for m = C(n,k) users: derives the
/// m x m encoding matrix from the coupled system and places the m
/// symbols along a cyclic window sequence. Storage overhead is exactly 1.
ProtocolDescriptor build_optimal(int n, int k, std::uint32_t q,
                                 std::uint64_t window_budget =
                                     kDefaultSearchBudget);

/// Seeded iterative protocol for any m <= C(n,k): k-1 external random
/// symbols, m+k-1 stored symbols, overhead (m+k-1)/m. k defaults to the
/// smallest size with C(n,k) >= m.
ProtocolDescriptor build_nearly(int n, std::uint64_t m, std::uint32_t q,
                                int k_override = 0,
                                std::uint64_t window_budget =
                                    kDefaultSearchBudget);

// ---- encoding and decoding -------------------------------------------

/// Encode with every random symbol supplied explicitly (length must be
/// seed_symbols()). This is the entry point the exhaustive audits drive.
std::vector<std::uint32_t> encode_with_seeds(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets,
    std::span<const std::uint32_t> seeds);

/// Encode drawing the random symbols from the keyed deterministic
/// generator; byte-identical for equal (descriptor, secrets, seed).
std::vector<std::uint32_t> encode(const ProtocolDescriptor& desc,
                                  std::span<const std::uint32_t> secrets,
                                  std::uint64_t rng_seed);

std::vector<std::uint32_t> sdssp_encode(const ProtocolDescriptor& desc,
                                        std::span<const std::uint32_t> secrets,
                                        std::uint64_t rng_seed);

/// y = E s; no randomness.
std::vector<std::uint32_t> optimal_encode(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets);

std::vector<std::uint32_t> nearly_encode(const ProtocolDescriptor& desc,
                                         std::span<const std::uint32_t> secrets,
                                         std::span<const std::uint32_t> seed);

/// Reconstruct user j's secret from (slot, value) reads. Throws
/// MissingSlot when a required slot is absent.
std::uint32_t user_decode(
    const ProtocolDescriptor& desc, std::uint64_t j,
    const std::vector<std::pair<std::uint64_t, std::uint32_t>>& reads);

}  // namespace dssp
