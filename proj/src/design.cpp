#include "dssp/design.hpp"

#include <algorithm>

namespace dssp {

std::optional<std::pair<std::uint64_t, std::uint64_t>>
AccessStructure::sperner_violation() const {
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const std::uint64_t mj = sets[j].mask();
    for (std::size_t l = 0; l < sets.size(); ++l) {
      if (j == l) continue;
      const std::uint64_t ml = sets[l].mask();
      if ((mj & ml) == mj && mj != ml) {
        return std::make_pair(j + 1, l + 1);
      }
      if (mj == ml && j < l) {
        // Duplicate sets violate the strict-subset form of the condition
        // in spirit: two users with identical access can read each
        // other's secrets. Report the pair.
        return std::make_pair(j + 1, l + 1);
      }
    }
  }
  return std::nullopt;
}

std::uint64_t max_users(int n) {
  if (n < 1) throw InvalidParameterError("max_users needs n >= 1");
  return binomial(n, n / 2);
}

DesignSolution solve_design(int n, std::uint64_t m) {
  if (n < 1) throw InvalidParameterError("solve_design needs n >= 1");
  const std::uint64_t cap = max_users(n);
  if (m < 1 || m > cap) {
    throw InfeasibleUserCountError(
        "m = " + std::to_string(m) + " is outside [1, " + std::to_string(cap) +
        "] for n = " + std::to_string(n));
  }
  DesignSolution sol;
  sol.n = n;
  sol.m = m;
  const int half = n / 2;
  int i = 0;
  for (int j = 0; j <= half; ++j) {
    if (binomial(n, j) <= m) i = j;
  }
  sol.i = i;

  const auto bin = [&](int j) {
    return static_cast<std::int64_t>(binomial(n, j));
  };

  if (m == 1) {
    // A single user needs one node; mass on size zero would price the
    // lone access set at nothing.
    sol.alpha_i = Rational(0);
    sol.alpha_i1 = Rational(1);
    sol.a[1] = 1;
    sol.psi_star = Rational(1);
    sol.c_star = 1;
    return sol;
  }

  if (binomial(n, i) == m) {
    // Boundary: all mass sits on one size; avoids the vanishing
    // denominator when i is already floor(n/2).
    sol.alpha_i = Rational(static_cast<std::int64_t>(m));
    sol.alpha_i1 = Rational(0);
    sol.a[i] = m;
    sol.psi_star = Rational(static_cast<std::int64_t>(m) * i);
    sol.c_star = static_cast<std::uint64_t>(m) * i;
    return sol;
  }

  const std::int64_t ci = bin(i);
  const std::int64_t ci1 = bin(i + 1);
  const std::int64_t ms = static_cast<std::int64_t>(m);
  sol.alpha_i = Rational((ci1 - ms) * ci, ci1 - ci);
  sol.alpha_i1 = Rational((ms - ci) * ci1, ci1 - ci);
  const std::uint64_t a_i = static_cast<std::uint64_t>(sol.alpha_i.floor());
  const std::uint64_t a_i1 = static_cast<std::uint64_t>(sol.alpha_i1.ceil());
  if (a_i > 0) sol.a[i] = a_i;
  sol.a[i + 1] = a_i1;
  sol.psi_star = Rational(i) * sol.alpha_i + Rational(i + 1) * sol.alpha_i1;
  sol.c_star = static_cast<std::uint64_t>(sol.psi_star.ceil());
  return sol;
}

namespace {

struct ProfileSearch {
  int n;
  std::uint64_t m;
  int max_size;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::uint64_t best_c = UINT64_MAX;
  std::map<int, std::uint64_t> best;
  std::vector<std::uint64_t> current;  // current[k-1] = a_k

  void run(int k, std::uint64_t placed, std::uint64_t cost, Rational lym) {
    if (++nodes > budget) {
      throw BudgetExhaustedError("profile search budget of " +
                                 std::to_string(budget) + " nodes");
    }
    const std::uint64_t remaining = m - placed;
    // Every remaining set costs at least k downloads.
    if (cost + remaining * k >= best_c) return;
    if (k > max_size) return;
    const std::uint64_t ck = binomial(n, k);
    const Rational unit(1, static_cast<std::int64_t>(ck));
    std::uint64_t limit = std::min<std::uint64_t>(remaining, ck);
    for (std::uint64_t a = 0; a <= limit; ++a) {
      Rational used = lym + Rational(static_cast<std::int64_t>(a)) * unit;
      if (used > Rational(1)) break;
      current[k - 1] = a;
      const std::uint64_t c2 = cost + a * k;
      if (placed + a == m) {
        if (c2 < best_c) {
          best_c = c2;
          best.clear();
          for (int j = 1; j <= max_size; ++j) {
            if (current[j - 1] > 0) best[j] = current[j - 1];
          }
        }
      } else {
        run(k + 1, placed + a, c2, used);
      }
    }
    current[k - 1] = 0;
  }
};

}  // namespace

BruteForceResult brute_force_design(int n, std::uint64_t m,
                                    std::uint64_t budget) {
  if (n < 1) throw InvalidParameterError("brute_force_design needs n >= 1");
  const std::uint64_t cap = max_users(n);
  if (m < 1 || m > cap) {
    throw InfeasibleUserCountError(
        "m = " + std::to_string(m) + " is outside [1, " + std::to_string(cap) +
        "] for n = " + std::to_string(n));
  }
  ProfileSearch search;
  search.n = n;
  search.m = m;
  search.max_size = std::max(1, n / 2);
  search.budget = budget;
  search.current.assign(search.max_size, 0);
  search.run(1, 0, 0, Rational(0));
  BruteForceResult res;
  res.a = std::move(search.best);
  res.c = search.best_c;
  res.profiles_examined = search.nodes;
  if (res.c == UINT64_MAX) {
    // Unreachable for m <= max_users: the uniform profile is feasible.
    throw std::logic_error("profile search found no feasible profile");
  }
  return res;
}

namespace {

// All k-subsets of [1..n] in colexicographic order.
std::vector<KSubset> colex_subsets(int n, int k) {
  std::vector<KSubset> out;
  out.reserve(binomial(n, k));
  KSubset cur;
  cur.elements.resize(k);
  // Colex order = sort by reversed tuples; generate recursively on the
  // largest element.
  struct Gen {
    int k;
    std::vector<KSubset>& out;
    KSubset& cur;
    void operator()(int pos, int max_elem) {
      if (pos == 0) {
        out.push_back(cur);
        return;
      }
      for (int e = pos; e <= max_elem; ++e) {
        cur.elements[pos - 1] = e;
        (*this)(pos - 1, e - 1);
      }
    }
  };
  if (k == 0) {
    out.push_back(KSubset{});
    return out;
  }
  Gen gen{k, out, cur};
  gen(k, n);
  return out;
}

bool contains(const KSubset& big, const KSubset& small) {
  return (big.mask() & small.mask()) == small.mask();
}

}  // namespace

namespace {

// Realizes the sizes from largest to smallest: every candidate for a
// smaller size must avoid being contained in a chosen larger set. The
// first pass takes colex initial segments (smallest shadow) and greedy
// fills; on failure the search backtracks over the larger levels too.
class SpernerRealizer {
 public:
  SpernerRealizer(int n, std::vector<std::pair<int, std::uint64_t>> sizes,
                  std::uint64_t budget)
      : n_(n), sizes_(std::move(sizes)), budget_(budget) {
    for (const auto& [k, a] : sizes_) pools_.push_back(colex_subsets(n_, k));
  }

  RealizeResult run() {
    RealizeResult res;
    // Greedy pass: at each level take the first available sets.
    if (greedy(res)) {
      res.status = RealizeStatus::Realized;
      res.certificate = "colex initial segments";
      return res;
    }
    chosen_.assign(sizes_.size(), {});
    try {
      if (search(0)) {
        res.status = RealizeStatus::Realized;
        res.certificate = "backtracking search";
        for (const auto& level : chosen_) {
          for (const auto& s : level) res.structure.sets.push_back(s);
        }
        std::sort(res.structure.sets.begin(), res.structure.sets.end());
        res.nodes_explored = nodes_;
        return res;
      }
    } catch (const BudgetExhaustedError&) {
      res.status = RealizeStatus::BudgetExhausted;
      res.nodes_explored = nodes_;
      res.certificate = "search budget of " + std::to_string(budget_) +
                        " nodes exhausted before realizability was decided";
      return res;
    }
    res.status = RealizeStatus::Unrealizable;
    res.nodes_explored = nodes_;
    res.certificate = "exhaustive search over " + std::to_string(nodes_) +
                      " partial selections found no family with this profile";
    return res;
  }

 private:
  bool greedy(RealizeResult& res) {
    std::vector<KSubset> chosen;
    for (std::size_t level = 0; level < sizes_.size(); ++level) {
      std::uint64_t need = sizes_[level].second;
      std::size_t start = chosen.size();
      for (const KSubset& cand : pools_[level]) {
        if (need == 0) break;
        bool blocked = false;
        for (std::size_t i = 0; i < start; ++i) {
          if (contains(chosen[i], cand)) {
            blocked = true;
            break;
          }
        }
        if (!blocked) {
          chosen.push_back(cand);
          --need;
        }
      }
      if (need > 0) return false;
    }
    res.structure.sets = std::move(chosen);
    std::sort(res.structure.sets.begin(), res.structure.sets.end());
    return true;
  }

  // Depth-first over levels; within a level, combinations of pool
  // indices in increasing order.
  bool search(std::size_t level) {
    if (level == sizes_.size()) return true;
    const std::uint64_t need = sizes_[level].second;
    std::vector<const KSubset*> avail;
    for (const KSubset& cand : pools_[level]) {
      bool blocked = false;
      for (std::size_t up = 0; up < level && !blocked; ++up) {
        for (const KSubset& big : chosen_[up]) {
          if (contains(big, cand)) {
            blocked = true;
            break;
          }
        }
      }
      if (!blocked) avail.push_back(&cand);
    }
    if (avail.size() < need) return false;
    // A level below every other size never conflicts with later levels
    // only through containment in larger sets; smaller sets chosen here
    // constrain nothing above. Still enumerate combinations so cases
    // where the greedy shadow was too fat get revisited.
    std::vector<std::size_t> idx(need);
    return combos(level, avail, idx, 0, 0);
  }

  bool combos(std::size_t level, const std::vector<const KSubset*>& avail,
              std::vector<std::size_t>& idx, std::size_t depth,
              std::size_t from) {
    const std::uint64_t need = sizes_[level].second;
    if (depth == need) {
      chosen_[level].clear();
      for (std::size_t d = 0; d < need; ++d) {
        chosen_[level].push_back(*avail[idx[d]]);
      }
      if (search(level + 1)) return true;
      chosen_[level].clear();
      return false;
    }
    for (std::size_t i = from;
         i + (need - depth) <= avail.size(); ++i) {
      if (++nodes_ > budget_) {
        throw BudgetExhaustedError("Sperner realization search");
      }
      idx[depth] = i;
      if (combos(level, avail, idx, depth + 1, i + 1)) return true;
    }
    return false;
  }

  int n_;
  std::vector<std::pair<int, std::uint64_t>> sizes_;  // descending size
  std::vector<std::vector<KSubset>> pools_;
  std::vector<std::vector<KSubset>> chosen_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

RealizeResult realize_sperner(int n,
                              const std::map<int, std::uint64_t>& profile,
                              std::uint64_t budget) {
  if (n < 1) throw InvalidParameterError("realize_sperner needs n >= 1");
  RealizeResult res;
  std::vector<std::pair<int, std::uint64_t>> sizes;
  Rational lym(0);
  for (const auto& [k, a] : profile) {
    if (a == 0) continue;
    if (k < 1 || k > n) {
      throw InvalidParameterError("profile size " + std::to_string(k) +
                                  " outside [1, n]");
    }
    if (a > binomial(n, k)) {
      res.status = RealizeStatus::Unrealizable;
      res.certificate = "profile wants " + std::to_string(a) +
                        " sets of size " + std::to_string(k) + " but only " +
                        std::to_string(binomial(n, k)) + " exist";
      return res;
    }
    sizes.emplace_back(k, a);
    lym = lym + Rational(static_cast<std::int64_t>(a),
                         static_cast<std::int64_t>(binomial(n, k)));
  }
  if (lym > Rational(1)) {
    res.status = RealizeStatus::Unrealizable;
    res.certificate = "profile violates the LYM bound: " + lym.str() + " > 1";
    return res;
  }
  if (sizes.empty()) {
    res.status = RealizeStatus::Realized;
    return res;
  }
  // A single size is automatically Sperner.
  if (sizes.size() == 1) {
    const auto [k, a] = sizes[0];
    auto all = colex_subsets(n, k);
    res.status = RealizeStatus::Realized;
    res.structure.sets.assign(all.begin(), all.begin() + a);
    return res;
  }
  std::sort(sizes.begin(), sizes.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  return SpernerRealizer(n, std::move(sizes), budget).run();
}

namespace {

// Enumerate profiles over sizes [1..max_size] with sum m and cost c,
// LYM-feasible, invoking fn on each; deterministic order.
template <typename Fn>
void enumerate_profiles(int n, int max_size, std::uint64_t m, std::uint64_t c,
                        Fn&& fn) {
  std::map<int, std::uint64_t> profile;
  struct Rec {
    int n;
    int max_size;
    std::uint64_t m, c;
    std::map<int, std::uint64_t>& profile;
    Fn& fn;
    void operator()(int k, std::uint64_t placed, std::uint64_t cost,
                    Rational lym) {
      if (placed == m) {
        if (cost == c) fn(profile);
        return;
      }
      if (k > max_size) return;
      const std::uint64_t remaining = m - placed;
      if (cost + remaining * k > c) return;  // cheapest completion too big
      const std::uint64_t ck = binomial(n, k);
      const std::uint64_t limit = std::min(remaining, ck);
      for (std::uint64_t a = 0; a <= limit; ++a) {
        Rational used = lym + Rational(static_cast<std::int64_t>(a),
                                       static_cast<std::int64_t>(ck));
        if (used > Rational(1)) break;
        if (cost + a * k > c) break;
        if (a > 0) profile[k] = a;
        (*this)(k + 1, placed + a, cost + a * k, used);
        profile.erase(k);
      }
    }
  };
  Rec rec{n, max_size, m, c, profile, fn};
  rec(1, 0, 0, Rational(0));
}

}  // namespace

AchievableResult achievable_min_c(int n, std::uint64_t m,
                                  std::uint64_t budget) {
  const DesignSolution lower = solve_design(n, m);
  const int max_size = std::max(1, n / 2);
  const std::uint64_t ceiling = m * static_cast<std::uint64_t>(max_size);
  for (std::uint64_t c = lower.c_star; c <= ceiling; ++c) {
    AchievableResult found;
    bool ok = false;
    bool undecided = false;
    enumerate_profiles(n, max_size, m, c, [&](const auto& profile) {
      if (ok || undecided) return;
      RealizeResult r = realize_sperner(n, profile, budget);
      if (r.status == RealizeStatus::Realized) {
        found.c = c;
        found.profile = profile;
        found.structure = std::move(r.structure);
        ok = true;
      } else if (r.status == RealizeStatus::BudgetExhausted) {
        undecided = true;
      }
    });
    if (ok) return found;
    if (undecided) {
      throw BudgetExhaustedError(
          "achievable_min_c could not certify cost " + std::to_string(c));
    }
  }
  throw std::logic_error("achievable_min_c found no realizable family");
}

PremiseReport check_optimizer_premises(int n) {
  if (n < 2) throw InvalidParameterError("check_optimizer_premises needs n >= 2");
  PremiseReport report;
  report.n = n;
  const auto f = [&](int k) {
    return Rational(1, static_cast<std::int64_t>(binomial(n, k)));
  };
  const auto slope = [&](int k1, int k2) {
    return (f(k2) - f(k1)) / Rational(k2 - k1);
  };
  // One-step increments of 1/C(n,k) strictly increase.
  for (int k = 0; k + 2 <= n; ++k) {
    Rational dk = f(k + 1) - f(k);
    Rational dk1 = f(k + 2) - f(k + 1);
    if (!(dk < dk1)) {
      report.ok = false;
      report.violations.push_back("increment not strict at k = " +
                                  std::to_string(k));
    }
  }
  // Secant slopes are monotone across every triple up to floor(n/2).
  const int half = n / 2;
  for (int k1 = 0; k1 <= half; ++k1) {
    for (int k2 = k1 + 1; k2 <= half; ++k2) {
      for (int k3 = k2 + 1; k3 <= half; ++k3) {
        if (!(slope(k1, k2) < slope(k2, k3))) {
          report.ok = false;
          report.violations.push_back(
              "slope order fails at (" + std::to_string(k1) + "," +
              std::to_string(k2) + "," + std::to_string(k3) + ")");
        }
      }
    }
  }
  // Every solution uses at most two sizes with consecutive indices.
  const std::uint64_t cap = max_users(n);
  for (std::uint64_t m = 1; m <= cap; ++m) {
    DesignSolution sol = solve_design(n, m);
    if (sol.a.size() > 2) {
      report.ok = false;
      report.violations.push_back("solution at m = " + std::to_string(m) +
                                  " uses more than two sizes");
    } else if (sol.a.size() == 2) {
      auto it = sol.a.begin();
      int k1 = it->first;
      int k2 = std::next(it)->first;
      if (k2 != k1 + 1) {
        report.ok = false;
        report.violations.push_back("solution at m = " + std::to_string(m) +
                                    " uses non-consecutive sizes");
      }
    }
  }
  return report;
}

}  // namespace dssp
