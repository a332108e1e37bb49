#include "dssp/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dssp/rng.hpp"

namespace dssp {

namespace {

std::string join_values(std::span<const std::uint32_t> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

// q^count when it fits in 64 bits, otherwise nullopt.
std::optional<std::uint64_t> power_checked(std::uint64_t q,
                                           std::size_t count) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (total > UINT64_MAX / q) return std::nullopt;
    total *= q;
  }
  return total;
}

void index_to_digits(std::uint64_t index, std::uint32_t q,
                     std::span<std::uint32_t> out) {
  for (auto& d : out) {
    d = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

bool decode_round_trip(const ProtocolDescriptor& desc,
                       std::span<const std::uint32_t> secrets,
                       std::span<const std::uint32_t> seeds,
                       std::string* witness) {
  const auto y = encode_with_seeds(desc, secrets, seeds);
  for (std::uint64_t j = 1; j <= desc.m; ++j) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> reads;
    for (std::uint64_t r : desc.readable_slots(j)) {
      reads.emplace_back(r, y[r - 1]);
    }
    std::uint32_t decoded;
    try {
      decoded = user_decode(desc, j, reads);
    } catch (const Error& e) {
      if (witness) {
        *witness = "user " + std::to_string(j) + " failed to decode (" +
                   e.name() + ": " + e.what() + ") on secrets=" +
                   join_values(secrets) + " seeds=" + join_values(seeds);
      }
      return false;
    }
    if (decoded != secrets[j - 1] % desc.q) {
      if (witness) {
        *witness = "user " + std::to_string(j) + " decoded " +
                   std::to_string(decoded) + " instead of " +
                   std::to_string(secrets[j - 1] % desc.q) + " on secrets=" +
                   join_values(secrets) + " seeds=" + join_values(seeds);
      }
      return false;
    }
  }
  return true;
}

}  // namespace

CorrectnessVerdict audit_correctness(const ProtocolDescriptor& desc,
                                     std::uint64_t trials,
                                     std::uint64_t exhaustive_budget,
                                     std::uint64_t rng_seed) {
  CorrectnessVerdict verdict;
  const std::size_t inputs = desc.m + desc.seed_symbols();
  const auto states = power_checked(desc.q, inputs);
  if (states && *states <= exhaustive_budget) {
    verdict.exhaustive = true;
    verdict.cases = *states;
    std::vector<std::uint32_t> digits(inputs);
    for (std::uint64_t s = 0; s < *states; ++s) {
      index_to_digits(s, desc.q, digits);
      std::span<const std::uint32_t> all(digits);
      if (!decode_round_trip(desc, all.first(desc.m), all.subspan(desc.m),
                             &verdict.counterexample)) {
        verdict.pass = false;
        return verdict;
      }
    }
    return verdict;
  }
  verdict.cases = trials;
  Rng rng = Rng::keyed(rng_seed, 0x6175646974ull);  // distinct audit stream
  std::vector<std::uint32_t> secrets(desc.m);
  std::vector<std::uint32_t> seeds(desc.seed_symbols());
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& s : secrets) s = rng.field_element(desc.q);
    for (auto& s : seeds) s = rng.field_element(desc.q);
    if (!decode_round_trip(desc, secrets, seeds, &verdict.counterexample)) {
      verdict.pass = false;
      return verdict;
    }
  }
  return verdict;
}

std::vector<SecrecyVerdict> audit_secrecy_exhaustive(
    const ProtocolDescriptor& desc, std::uint64_t budget) {
  const std::size_t inputs = desc.m + desc.seed_symbols();
  const auto states = power_checked(desc.q, inputs);
  if (!states || *states > budget) {
    throw BudgetExhaustedError(
        "exhaustive secrecy needs q^" + std::to_string(inputs) +
        " states, beyond the budget of " + std::to_string(budget));
  }
  const std::uint64_t total = *states;
  const std::uint32_t q = desc.q;

  // Joint tallies per observer: counts[widx * q + value of s_l], where
  // widx folds the observer's readable symbols base q.
  struct ObserverPlan {
    std::vector<std::uint64_t> slots;
    std::uint64_t window_states = 0;
  };
  std::vector<ObserverPlan> plans(desc.m);
  for (std::uint64_t j = 1; j <= desc.m; ++j) {
    plans[j - 1].slots = desc.readable_slots(j);
    auto w = power_checked(q, plans[j - 1].slots.size());
    if (!w || *w > budget) {
      throw BudgetExhaustedError("observer window of user " +
                                 std::to_string(j) +
                                 " has too many states to tabulate");
    }
    plans[j - 1].window_states = *w;
  }

  const std::uint64_t m = desc.m;
  std::uint64_t tally_entries = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    tally_entries += plans[j].window_states * q * m;
  }
  if (tally_entries > 100'000'000) {
    throw BudgetExhaustedError("joint tallies would need " +
                               std::to_string(tally_entries) + " counters");
  }
  std::vector<std::vector<std::uint64_t>> tallies(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    tallies[j].assign(plans[j].window_states * q * m, 0);
  }

  // The state space is partitioned across threads; per-thread tallies
  // merge by addition, so the result is independent of the thread count.
#pragma omp parallel
  {
    std::vector<std::vector<std::uint64_t>> local(m);
    for (std::uint64_t j = 0; j < m; ++j) local[j].assign(tallies[j].size(), 0);
    std::vector<std::uint32_t> digits(inputs);
#pragma omp for schedule(static)
    for (std::uint64_t s = 0; s < total; ++s) {
      index_to_digits(s, q, digits);
      std::span<const std::uint32_t> all(digits);
      const auto y = encode_with_seeds(desc, all.first(m), all.subspan(m));
      for (std::uint64_t j = 0; j < m; ++j) {
        std::uint64_t widx = 0;
        for (auto it = plans[j].slots.rbegin(); it != plans[j].slots.rend();
             ++it) {
          widx = widx * q + y[*it - 1];
        }
        for (std::uint64_t l = 0; l < m; ++l) {
          local[j][(widx * q + digits[l]) * m + l] += 1;
        }
      }
    }
#pragma omp critical
    {
      for (std::uint64_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < local[j].size(); ++i) {
          tallies[j][i] += local[j][i];
        }
      }
    }
  }

  std::vector<SecrecyVerdict> verdicts;
  for (std::uint64_t j = 1; j <= m; ++j) {
    for (std::uint64_t l = 1; l <= m; ++l) {
      if (j == l) continue;
      SecrecyVerdict v;
      v.observer = j;
      v.target = l;
      v.method = "exhaustive";
      v.pass = true;
      const auto& tally = tallies[j - 1];
      for (std::uint64_t widx = 0; widx < plans[j - 1].window_states;
           ++widx) {
        // Conditional uniformity: every secret value must appear the
        // same exact number of times alongside this observed window.
        const std::uint64_t first = tally[(widx * q + 0) * m + (l - 1)];
        for (std::uint32_t val = 1; val < q; ++val) {
          if (tally[(widx * q + val) * m + (l - 1)] != first) {
            v.pass = false;
            v.witness = "window state " + std::to_string(widx) +
                        " of user " + std::to_string(j) + " skews secret " +
                        std::to_string(l) + ": count(" +
                        std::to_string(val) + ") = " +
                        std::to_string(tally[(widx * q + val) * m + (l - 1)]) +
                        " vs count(0) = " + std::to_string(first);
            break;
          }
        }
        if (!v.pass) break;
      }
      verdicts.push_back(std::move(v));
    }
  }
  return verdicts;
}

namespace {

// rank of the rows stacked with one extra unit row.
std::size_t rank_with_unit(const Matrix& e,
                           const std::vector<std::uint64_t>& rows,
                           std::uint64_t unit_col, const PrimeField& field) {
  Matrix stacked(field, rows.size() + 1, e.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      stacked.at(r, c) = e.at(rows[r] - 1, c);
    }
  }
  stacked.at(rows.size(), unit_col - 1) = 1 % field.modulus();
  return rank(stacked);
}

std::size_t rank_of_rows(const Matrix& e,
                         const std::vector<std::uint64_t>& rows,
                         const PrimeField& field) {
  Matrix sub(field, rows.size(), e.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      sub.at(r, c) = e.at(rows[r] - 1, c);
    }
  }
  return rank(sub);
}

}  // namespace

std::vector<SecrecyVerdict> audit_secrecy_rank(
    const ProtocolDescriptor& desc) {
  if (desc.kind != ProtocolKind::OptimalSo || !desc.encoding_matrix) {
    throw WrongKindError(
        "rank certificates apply only to the deterministic linear kind");
  }
  const PrimeField field = desc.field();
  const Matrix& e = *desc.encoding_matrix;
  std::vector<SecrecyVerdict> verdicts;
  for (std::uint64_t j = 1; j <= desc.m; ++j) {
    const auto window = desc.user_slots(j);
    const auto readable = desc.readable_slots(j);
    const std::size_t window_rank = rank_of_rows(e, window, field);
    const std::size_t readable_rank = rank_of_rows(e, readable, field);
    // Decodability: e_j inside the window's row space.
    const bool decodable =
        window_rank == static_cast<std::size_t>(desc.k) &&
        rank_with_unit(e, window, j, field) == window_rank;
    for (std::uint64_t l = 1; l <= desc.m; ++l) {
      if (j == l) continue;
      SecrecyVerdict v;
      v.observer = j;
      v.target = l;
      v.method = "rank";
      const bool window_hides =
          rank_with_unit(e, window, l, field) == window_rank + 1;
      const bool readable_hides =
          rank_with_unit(e, readable, l, field) == readable_rank + 1;
      v.pass = decodable && window_hides && readable_hides;
      if (!v.pass) {
        v.witness = !decodable
                        ? "user " + std::to_string(j) +
                              " cannot decode linearly from its window"
                        : "unit row of secret " + std::to_string(l) +
                              " lies in the row space of user " +
                              std::to_string(j) + "'s readable slots";
      }
      verdicts.push_back(std::move(v));
    }
  }
  return verdicts;
}

MetricsReport metrics(const ProtocolDescriptor& desc) {
  MetricsReport report;
  report.so = Rational(static_cast<std::int64_t>(desc.h),
                       static_cast<std::int64_t>(desc.m));
  switch (desc.kind) {
    case ProtocolKind::Sdssp:
      report.so_expected = report.so;
      break;
    case ProtocolKind::OptimalSo:
      report.so_expected = Rational(1);
      break;
    case ProtocolKind::NearlyOptimal:
      report.so_expected =
          Rational(static_cast<std::int64_t>(desc.m + desc.k - 1),
                   static_cast<std::int64_t>(desc.m));
      break;
  }
  report.comm = 0;
  for (std::uint64_t j = 1; j <= desc.m; ++j) {
    report.comm += desc.user_slots(j).size();
  }
  report.comm_lower = solve_design(desc.n, desc.m).c_star;
  report.users_max = max_users(desc.n);
  return report;
}

bool AuditReport::pass() const {
  if (!correctness.pass || !sperner_pass) return false;
  for (const auto& v : secrecy) {
    if (!v.pass) return false;
  }
  return true;
}

AuditReport audit(const ProtocolDescriptor& desc,
                  const AuditOptions& options) {
  AuditReport report;
  report.correctness = audit_correctness(desc, options.trials,
                                         options.enumeration_budget,
                                         options.rng_seed);
  if (auto witness = desc.access.sperner_violation()) {
    report.sperner_pass = false;
    report.sperner_witness =
        "access set " + std::to_string(witness->first) +
        " is contained in access set " + std::to_string(witness->second);
  }
  report.metric = metrics(desc);
  if (desc.kind == ProtocolKind::OptimalSo) {
    report.secrecy = audit_secrecy_rank(desc);
    report.secrecy_method = "rank";
  } else {
    report.secrecy = audit_secrecy_exhaustive(desc,
                                              options.enumeration_budget);
    report.secrecy_method = "exhaustive";
  }
  return report;
}

}  // namespace dssp
