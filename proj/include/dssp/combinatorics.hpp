#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dssp/errors.hpp"

namespace dssp {

/// Exact C(n, k); throws Overflow if the value does not fit in 64 bits.
std::uint64_t binomial(unsigned n, unsigned k);

/// A k-subset of [1..n], strictly increasing.
struct KSubset {
  std::vector<int> elements;

  std::uint64_t mask() const;  // bit i-1 set for element i; needs n <= 64
  friend bool operator==(const KSubset&, const KSubset&) = default;
  friend auto operator<=>(const KSubset&, const KSubset&) = default;
};

/// All C(n,k) k-subsets of [1..n] in a revolving-door order: consecutive
/// subsets differ by exactly one element swap, including the wrap from
/// the last subset back to the first.
std::vector<KSubset> revolving_door(int n, int k);

/// A sequence of node indices whose length-k windows are the users'
/// access sets. Cyclic sequences wrap their windows modulo the length.
struct WindowSequence {
  std::vector<int> symbols;  // 1-based node indices
  int window = 1;            // k
  bool cyclic = false;

  std::size_t window_count() const {
    if (cyclic) return symbols.size();
    return symbols.size() >= static_cast<std::size_t>(window)
               ? symbols.size() - window + 1
               : 0;
  }
  /// The j-th window (0-based start) as a sorted subset.
  KSubset window_at(std::size_t j) const;
  std::vector<KSubset> windows() const;
};

struct WindowCheck {
  bool ok = true;
  std::string violation;  // human-readable description of the first failure
};

/// True iff every window has pairwise-distinct symbols and all windows
/// are distinct as sets.
WindowCheck verify_window_property(const WindowSequence& seq);

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

struct WindowSearch {
  SearchStatus status = SearchStatus::Infeasible;
  WindowSequence sequence;
  std::uint64_t nodes_explored = 0;
  std::string note;  // certificate description for Infeasible outcomes
};

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

/// Build a sequence whose m windows of width k are m distinct k-subsets
/// of [1..n]. Cyclic sequences have length m and require m = C(n,k);
/// acyclic ones have length m+k-1. Tries cheap candidates (an ascending
/// run when it fits, then the revolving-door departure sequence) and
/// falls back to depth-first search within the node budget.
WindowSearch window_sequence(int n, int k, std::uint64_t m, bool cyclic,
                             std::uint64_t budget = kDefaultSearchBudget);

}  // namespace dssp
