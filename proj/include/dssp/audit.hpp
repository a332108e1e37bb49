#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dssp/protocol.hpp"
#include "dssp/rational.hpp"

namespace dssp {

struct CorrectnessVerdict {
  bool pass = true;
  bool exhaustive = false;
  std::uint64_t cases = 0;
  std::string counterexample;  // reproducible witness on failure
};

/// Decode-equals-secret over either full input enumeration (when
/// q^(m + seed symbols) fits the budget) or seeded random trials.
CorrectnessVerdict audit_correctness(const ProtocolDescriptor& desc,
                                     std::uint64_t trials = 200,
                                     std::uint64_t exhaustive_budget =
                                         1'000'000,
                                     std::uint64_t rng_seed = 1);

struct SecrecyVerdict {
  std::uint64_t observer = 0;  // user j reading its nodes
  std::uint64_t target = 0;    // user l whose secret must stay hidden
  bool pass = false;
  std::string method;  // "exhaustive" or "rank"
  std::string witness;
};

/// For every ordered pair (j, l), l != j: enumerate all inputs and test
/// that the secret of l is exactly conditionally uniform given every
/// value of the data user j can read. Exact integer counting; throws
/// BudgetExhausted when the state space exceeds the budget.
std::vector<SecrecyVerdict> audit_secrecy_exhaustive(
    const ProtocolDescriptor& desc, std::uint64_t budget = 1'000'000);

/// Linear-certificate secrecy for the deterministic matrix encoder:
/// user j's window rows must not span e_l (and must span e_j). Also
/// checks the rows of every slot user j can read, not just its window.
std::vector<SecrecyVerdict> audit_secrecy_rank(const ProtocolDescriptor& desc);

struct MetricsReport {
  Rational so;            // stored slots / secrets
  Rational so_expected;   // the kind's theoretical overhead
  std::uint64_t comm = 0;        // total symbols downloaded
  std::uint64_t comm_lower = 0;  // optimizer bound for (n, m)
  std::uint64_t users_max = 0;   // capacity of n nodes
};

MetricsReport metrics(const ProtocolDescriptor& desc);

struct AuditReport {
  CorrectnessVerdict correctness;
  bool sperner_pass = true;
  std::string sperner_witness;
  std::vector<SecrecyVerdict> secrecy;
  std::string secrecy_method;
  MetricsReport metric;
  bool pass() const;
};

struct AuditOptions {
  std::uint64_t trials = 200;
  std::uint64_t enumeration_budget = 1'000'000;
  std::uint64_t rng_seed = 1;
};

/// Full audit: correctness, the antichain condition, metrics, and
/// secrecy by rank certificate for the linear deterministic kind or by
/// exhaustive enumeration when the state space fits the budget.
AuditReport audit(const ProtocolDescriptor& desc, const AuditOptions& options);

}  // namespace dssp
