#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dssp/combinatorics.hpp"
#include "dssp/rational.hpp"

namespace dssp {

/// One access set per user; must be an antichain (no set contains
/// another) for a protocol to exist.
struct AccessStructure {
  std::vector<KSubset> sets;

  std::size_t user_count() const { return sets.size(); }
  /// First violating pair (1-based user indices: contained, container),
  /// or nullopt when the family is Sperner.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> sperner_violation()
      const;
  bool is_sperner() const { return !sperner_violation().has_value(); }
};

/// Largest number of users n storage nodes can serve: C(n, floor(n/2)).
std::uint64_t max_users(int n);

/// Output of the download-cost optimizer: the split size i, the exact
/// continuous masses on sizes i and i+1, the rounded integer profile,
/// the continuous optimum psi_star and the integer optimum c_star.
struct DesignSolution {
  int n = 0;
  std::uint64_t m = 0;
  int i = 0;
  Rational alpha_i;
  Rational alpha_i1;
  std::map<int, std::uint64_t> a;  // only nonzero sizes are kept
  Rational psi_star;
  std::uint64_t c_star = 0;
};

/// Closed-form optimizer. Throws InfeasibleUserCount when m exceeds
/// max_users(n).
DesignSolution solve_design(int n, std::uint64_t m);

struct BruteForceResult {
  std::map<int, std::uint64_t> a;
  std::uint64_t c = 0;
  std::uint64_t profiles_examined = 0;
};

/// Independent oracle: exhaustive minimum of sum k*a_k over nonnegative
/// integer profiles with sum a_k = m and the LYM bound.
BruteForceResult brute_force_design(int n, std::uint64_t m,
                                    std::uint64_t budget = 50'000'000);

enum class RealizeStatus { Realized, Unrealizable, BudgetExhausted };

struct RealizeResult {
  RealizeStatus status = RealizeStatus::Unrealizable;
  AccessStructure structure;
  std::string certificate;
  std::uint64_t nodes_explored = 0;
};

/// Construct a Sperner family with exactly profile[k] sets of size k, or
/// certify that none exists. Large sets are drawn colexicographically
/// first so their shadow stays small; a backtracking search covers the
/// rest within the budget.
RealizeResult realize_sperner(int n,
                              const std::map<int, std::uint64_t>& profile,
                              std::uint64_t budget = kDefaultSearchBudget);

struct AchievableResult {
  std::uint64_t c = 0;
  std::map<int, std::uint64_t> profile;
  AccessStructure structure;
};

/// Smallest total access-set size over realizable Sperner families with
/// m sets, searched upward from the optimizer's lower bound. Throws
/// BudgetExhausted when realizability of a cheaper profile is undecided.
AchievableResult achievable_min_c(int n, std::uint64_t m,
                                  std::uint64_t budget = kDefaultSearchBudget);

struct PremiseReport {
  int n = 0;
  bool ok = true;
  std::vector<std::string> violations;
};

/// Verifies the facts the closed-form optimizer rests on: the one-step
/// increments of 1/C(n,k) are strictly increasing, secant slopes are
/// monotone, and every solution concentrates on at most two consecutive
/// sizes.
PremiseReport check_optimizer_premises(int n);

}  // namespace dssp
