#include "dssp/protocol.hpp"

#include <algorithm>

#include "dssp/rng.hpp"
#include "dssp/shamir.hpp"

namespace dssp {

std::string kind_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Sdssp: return "sdssp";
    case ProtocolKind::OptimalSo: return "optimal-so";
    case ProtocolKind::NearlyOptimal: return "nearly-optimal";
  }
  throw std::logic_error("unknown protocol kind");
}

ProtocolKind kind_from_name(const std::string& name) {
  if (name == "sdssp") return ProtocolKind::Sdssp;
  if (name == "optimal-so" || name == "optimal") return ProtocolKind::OptimalSo;
  if (name == "nearly-optimal" || name == "nearly") {
    return ProtocolKind::NearlyOptimal;
  }
  throw InvalidParameterError("unknown protocol kind: " + name);
}

namespace {

// Slot offset of user j's block in the per-user layout: blocks are laid
// out in user order, block j holding |A_j| shares.
std::uint64_t block_offset(const ProtocolDescriptor& desc, std::uint64_t j) {
  std::uint64_t off = 0;
  for (std::uint64_t u = 1; u < j; ++u) off += desc.user_set_size(u);
  return off;
}

std::uint64_t wrap_slot(std::uint64_t base, std::uint64_t offset,
                        std::uint64_t m) {
  return (base - 1 + offset) % m + 1;
}

}  // namespace

std::vector<std::uint64_t> ProtocolDescriptor::user_slots(
    std::uint64_t j) const {
  if (j < 1 || j > m) {
    throw InvalidParameterError("user index " + std::to_string(j) +
                                " outside [1, m]");
  }
  std::vector<std::uint64_t> slots;
  switch (kind) {
    case ProtocolKind::Sdssp: {
      const std::uint64_t off = block_offset(*this, j);
      const std::size_t t = user_set_size(j);
      for (std::size_t i = 1; i <= t; ++i) slots.push_back(off + i);
      break;
    }
    case ProtocolKind::OptimalSo:
      for (int r = 0; r < k; ++r) slots.push_back(wrap_slot(j, r, m));
      break;
    case ProtocolKind::NearlyOptimal:
      for (int r = 0; r < k; ++r) slots.push_back(j + r);
      break;
  }
  return slots;
}

std::vector<std::uint32_t> ProtocolDescriptor::user_points(
    std::uint64_t j) const {
  switch (kind) {
    case ProtocolKind::Sdssp: {
      const std::size_t t = user_set_size(j);
      std::vector<std::uint32_t> pts;
      for (std::size_t i = 1; i <= t; ++i) {
        pts.push_back(static_cast<std::uint32_t>(i));
      }
      return pts;
    }
    case ProtocolKind::OptimalSo:
    case ProtocolKind::NearlyOptimal:
      return points;
  }
  throw std::logic_error("unknown protocol kind");
}

std::vector<std::uint64_t> ProtocolDescriptor::readable_slots(
    std::uint64_t j) const {
  const std::uint64_t node_mask = access.sets.at(j - 1).mask();
  std::vector<std::uint64_t> slots;
  for (std::uint64_t r = 1; r <= h; ++r) {
    const int node = storing.node_of_slot[r - 1];
    if (node_mask & (1ull << (node - 1))) slots.push_back(r);
  }
  return slots;
}

std::size_t ProtocolDescriptor::seed_symbols() const {
  switch (kind) {
    case ProtocolKind::Sdssp: {
      std::size_t total = 0;
      for (std::uint64_t j = 1; j <= m; ++j) total += user_set_size(j) - 1;
      return total;
    }
    case ProtocolKind::OptimalSo:
      return 0;
    case ProtocolKind::NearlyOptimal:
      return static_cast<std::size_t>(k - 1);
  }
  throw std::logic_error("unknown protocol kind");
}

// ---- per-user threshold protocol ---------------------------------------

ProtocolDescriptor build_sdssp(int n, const AccessStructure& access,
                               std::uint32_t q) {
  if (n < 1) throw InvalidParameterError("build_sdssp needs n >= 1");
  if (n > 64) throw InvalidParameterError("build_sdssp supports n <= 64");
  if (access.sets.empty()) {
    throw InvalidParameterError("access structure has no users");
  }
  std::size_t t_max = 0;
  for (std::size_t j = 0; j < access.sets.size(); ++j) {
    const auto& set = access.sets[j];
    if (set.elements.empty()) {
      throw InvalidParameterError("user " + std::to_string(j + 1) +
                                  " has an empty access set");
    }
    for (std::size_t i = 0; i < set.elements.size(); ++i) {
      if (set.elements[i] < 1 || set.elements[i] > n) {
        throw InvalidParameterError("node index outside [1, n]");
      }
      if (i + 1 < set.elements.size() &&
          set.elements[i] >= set.elements[i + 1]) {
        throw InvalidParameterError("access sets must be strictly increasing");
      }
    }
    t_max = std::max(t_max, set.elements.size());
  }
  if (auto witness = access.sperner_violation()) {
    throw NotSpernerError(
        witness->first, witness->second,
        "access set " + std::to_string(witness->first) +
            " is contained in access set " + std::to_string(witness->second));
  }
  const PrimeField field(q);
  if (q <= t_max) {
    throw FieldTooSmallError("q = " + std::to_string(q) +
                             " but the largest access set needs q > " +
                             std::to_string(t_max));
  }
  ProtocolDescriptor desc;
  desc.kind = ProtocolKind::Sdssp;
  desc.n = n;
  desc.m = access.sets.size();
  desc.q = q;
  desc.k = 0;
  desc.access = access;
  std::uint64_t h = 0;
  for (const auto& set : access.sets) {
    // Share i of user j sits on the i-th smallest node of A_j.
    for (int node : set.elements) desc.storing.node_of_slot.push_back(node);
    h += set.elements.size();
  }
  desc.h = h;
  return desc;
}

// ---- deterministic single-copy protocol --------------------------------

bool nonsingularity_precheck(std::uint32_t q, std::uint64_t m, int k) {
  for (int i = 1; i <= k; ++i) {
    if ((static_cast<std::uint64_t>(i) * m) % (q - 1) == 0) return false;
  }
  return true;
}

Matrix optimal_system_matrix(const PrimeField& field, std::uint64_t m, int k) {
  if (k < 1) throw InvalidParameterError("system needs k >= 1");
  if (field.modulus() <= static_cast<std::uint32_t>(k)) {
    throw FieldTooSmallError("need q > k for distinct powers of the" +
                             std::string(" primitive element"));
  }
  const std::uint32_t gamma = primitive_element(field).value;
  const std::uint64_t dim = m * static_cast<std::uint64_t>(k);
  Matrix a(field, dim, dim);
  const std::uint64_t p_cols = m * static_cast<std::uint64_t>(k - 1);
  for (std::uint64_t j = 1; j <= m; ++j) {
    for (int i = 1; i <= k; ++i) {
      const std::uint64_t row = (j - 1) * k + (i - 1);
      // Coefficient block: powers of the i-th evaluation point.
      const std::uint32_t point = field.pow(gamma, i);
      std::uint32_t v = 1 % field.modulus();
      for (int l = 1; l <= k - 1; ++l) {
        v = field.mul(v, point);
        a.at(row, (j - 1) * (k - 1) + (l - 1)) = v;
      }
      // Shifted negative identity: this equation pins symbol j+i-1.
      const std::uint64_t slot = (j - 1 + i - 1) % m;
      a.at(row, p_cols + slot) = field.neg(1 % field.modulus());
    }
  }
  return a;
}

ProtocolDescriptor build_optimal(int n, int k, std::uint32_t q,
                                 std::uint64_t window_budget) {
  if (n < 1 || k < 1 || k > n / 2) {
    throw InvalidParameterError(
        "build_optimal needs n >= 1 and 1 <= k <= n/2");
  }
  if (n > 64) throw InvalidParameterError("build_optimal supports n <= 64");
  const PrimeField field(q);
  if (q <= static_cast<std::uint32_t>(k)) {
    throw FieldTooSmallError("q = " + std::to_string(q) +
                             " must exceed k = " + std::to_string(k));
  }
  const std::uint64_t m = binomial(n, k);

  const bool precheck = nonsingularity_precheck(q, m, k);
  Matrix a = optimal_system_matrix(field, m, k);
  // The divisibility test is only sufficient, so a failed precheck still
  // gets the determinant's verdict before the build is refused.
  if (!precheck && det(a) == 0) {
    throw SingularSystemError(
        "coupled system is singular for q = " + std::to_string(q) + ", m = " +
        std::to_string(m) + ", k = " + std::to_string(k) +
        " ((q-1) divides i*m for some i in [1..k] and det = 0)");
  }

  // Solve A X = K for the block-repetition matrix K; the encoding matrix
  // is the negated last m rows of X = A^{-1} K.
  const std::uint64_t dim = m * static_cast<std::uint64_t>(k);
  Matrix rhs(field, dim, m);
  for (std::uint64_t j = 0; j < m; ++j) {
    for (int i = 0; i < k; ++i) rhs.at(j * k + i, j) = 1 % q;
  }
  Matrix x(field, 0, 0);
  try {
    x = gauss_solve(a, rhs);
  } catch (const SingularMatrixError& e) {
    throw SingularSystemError("coupled system is singular (rank " +
                              std::to_string(e.rank) + " of " +
                              std::to_string(dim) + ")");
  }
  Matrix e(field, m, m);
  const std::uint64_t y_rows = m * static_cast<std::uint64_t>(k - 1);
  for (std::uint64_t r = 0; r < m; ++r) {
    for (std::uint64_t c = 0; c < m; ++c) {
      e.at(r, c) = field.neg(x.at(y_rows + r, c));
    }
  }
  if (rank(e) != m) {
    throw SingularSystemError("encoding matrix is singular");
  }

  WindowSearch search = window_sequence(n, k, m, /*cyclic=*/true,
                                        window_budget);
  if (search.status == SearchStatus::BudgetExhausted) {
    throw BudgetExhaustedError("cyclic window sequence search: " +
                               search.note);
  }
  if (search.status != SearchStatus::Found) {
    throw WindowInfeasibleError(
        "no cyclic window sequence for n = " + std::to_string(n) + ", k = " +
        std::to_string(k) + ": " + search.note);
  }

  ProtocolDescriptor desc;
  desc.kind = ProtocolKind::OptimalSo;
  desc.n = n;
  desc.m = m;
  desc.q = q;
  desc.k = k;
  const std::uint32_t gamma = primitive_element(field).value;
  for (int i = 1; i <= k; ++i) desc.points.push_back(field.pow(gamma, i));
  desc.storing.node_of_slot = search.sequence.symbols;
  desc.h = m;
  desc.encoding_matrix = std::move(e);
  for (std::uint64_t j = 0; j < m; ++j) {
    desc.access.sets.push_back(search.sequence.window_at(j));
  }
  return desc;
}

// ---- seeded iterative protocol ------------------------------------------

ProtocolDescriptor build_nearly(int n, std::uint64_t m, std::uint32_t q,
                                int k_override,
                                std::uint64_t window_budget) {
  if (n < 1 || m < 1) {
    throw InvalidParameterError("build_nearly needs n >= 1 and m >= 1");
  }
  if (n > 64) throw InvalidParameterError("build_nearly supports n <= 64");
  int k = 0;
  if (k_override > 0) {
    if (k_override > n || binomial(n, k_override) < m) {
      throw InvalidParameterError("k_override admits fewer than m users");
    }
    k = k_override;
  } else {
    for (int j = 1; j <= n; ++j) {
      if (binomial(n, j) >= m) {
        k = j;
        break;
      }
    }
    if (k == 0) {
      throw InfeasibleUserCountError(
          "m = " + std::to_string(m) + " exceeds every C(" +
          std::to_string(n) + ", k)");
    }
  }
  const PrimeField field(q);
  if (q <= static_cast<std::uint32_t>(k)) {
    throw FieldTooSmallError("q = " + std::to_string(q) +
                             " must exceed k = " + std::to_string(k));
  }

  ProtocolDescriptor desc;
  desc.kind = ProtocolKind::NearlyOptimal;
  desc.n = n;
  desc.m = m;
  desc.q = q;
  desc.k = k;
  for (int i = 1; i <= k; ++i) {
    desc.points.push_back(static_cast<std::uint32_t>(i));
  }

  if (k >= 2) {
    // Precompute w = (p_k, p_k^2, ..., p_k^{k-1}) D^{-1}, the row that
    // advances the recursion in O(k) per symbol.
    std::span<const std::uint32_t> head(desc.points.data(), k - 1);
    Matrix d = vandermonde(field, head, k - 1);
    Matrix d_inv = invert(d);
    std::vector<std::uint32_t> last_row;
    std::uint32_t v = 1 % q;
    for (int c = 0; c < k - 1; ++c) {
      v = field.mul(v, desc.points[k - 1]);
      last_row.push_back(v);
    }
    desc.tail_mix.assign(k - 1, 0);
    for (int c = 0; c < k - 1; ++c) {
      std::uint32_t acc = 0;
      for (int r = 0; r < k - 1; ++r) {
        acc = field.add(acc, field.mul(last_row[r], d_inv.at(r, c)));
      }
      desc.tail_mix[c] = acc;
    }
  }

  WindowSearch search = window_sequence(n, k, m, /*cyclic=*/false,
                                        window_budget);
  if (search.status == SearchStatus::BudgetExhausted) {
    throw BudgetExhaustedError("window sequence search: " + search.note);
  }
  if (search.status != SearchStatus::Found) {
    throw WindowInfeasibleError(
        "no window sequence of length m+k-1 for n = " + std::to_string(n) +
        ", k = " + std::to_string(k) + ", m = " + std::to_string(m) + ": " +
        search.note);
  }
  desc.storing.node_of_slot = search.sequence.symbols;
  desc.h = m + static_cast<std::uint64_t>(k) - 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    desc.access.sets.push_back(search.sequence.window_at(j));
  }
  return desc;
}

// ---- encode / decode -----------------------------------------------------

std::vector<std::uint32_t> sdssp_encode_with_seeds(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets,
    std::span<const std::uint32_t> seeds) {
  const PrimeField field = desc.field();
  std::vector<std::uint32_t> y;
  y.reserve(desc.h);
  std::size_t seed_pos = 0;
  for (std::uint64_t j = 1; j <= desc.m; ++j) {
    const std::size_t t = desc.user_set_size(j);
    ShamirParams params = ShamirParams::standard(field, t, t);
    auto shares = shamir_encode(field, secrets[j - 1], params,
                                seeds.subspan(seed_pos, t - 1));
    seed_pos += t - 1;
    y.insert(y.end(), shares.begin(), shares.end());
  }
  return y;
}

std::vector<std::uint32_t> optimal_encode(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets) {
  if (desc.kind != ProtocolKind::OptimalSo) {
    throw WrongKindError("optimal_encode needs an optimal-so descriptor");
  }
  if (secrets.size() != desc.m) {
    throw InvalidParameterError("expected " + std::to_string(desc.m) +
                                " secrets, got " +
                                std::to_string(secrets.size()));
  }
  return desc.encoding_matrix->mul_vec(secrets);
}

std::vector<std::uint32_t> nearly_encode(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets,
    std::span<const std::uint32_t> seed) {
  if (desc.kind != ProtocolKind::NearlyOptimal) {
    throw WrongKindError("nearly_encode needs a nearly-optimal descriptor");
  }
  if (secrets.size() != desc.m) {
    throw InvalidParameterError("expected " + std::to_string(desc.m) +
                                " secrets, got " +
                                std::to_string(secrets.size()));
  }
  const int k = desc.k;
  if (seed.size() != static_cast<std::size_t>(k - 1)) {
    throw InvalidParameterError("expected a seed of k-1 symbols");
  }
  const PrimeField field = desc.field();
  std::vector<std::uint32_t> y(desc.h);
  // First polynomial: constant term s_1, higher coefficients from the
  // seed; its k evaluations open the pipeline.
  {
    std::vector<std::uint32_t> coeffs;
    coeffs.push_back(secrets[0] % desc.q);
    for (std::uint32_t c : seed) coeffs.push_back(c % desc.q);
    for (int i = 0; i < k; ++i) {
      // Horner evaluation at points[i].
      std::uint32_t acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = field.add(field.mul(acc, desc.points[i]), *it);
      }
      y[i] = acc;
    }
  }
  for (std::uint64_t j = 2; j <= desc.m; ++j) {
    const std::uint32_t s = secrets[j - 1] % desc.q;
    // Symbol j+k-1 from the k-1 already-placed symbols of window j:
    // the mix row against (y_j - s_j, ..., y_{j+k-2} - s_j).
    std::uint32_t acc = s;
    for (int t = 0; t < k - 1; ++t) {
      acc = field.add(
          acc, field.mul(desc.tail_mix[t], field.sub(y[j - 1 + t], s)));
    }
    y[j + k - 2] = acc;
  }
  return y;
}

std::vector<std::uint32_t> encode_with_seeds(
    const ProtocolDescriptor& desc, std::span<const std::uint32_t> secrets,
    std::span<const std::uint32_t> seeds) {
  if (secrets.size() != desc.m) {
    throw InvalidParameterError("expected " + std::to_string(desc.m) +
                                " secrets, got " +
                                std::to_string(secrets.size()));
  }
  if (seeds.size() != desc.seed_symbols()) {
    throw InvalidParameterError("expected " +
                                std::to_string(desc.seed_symbols()) +
                                " seed symbols, got " +
                                std::to_string(seeds.size()));
  }
  switch (desc.kind) {
    case ProtocolKind::Sdssp:
      return sdssp_encode_with_seeds(desc, secrets, seeds);
    case ProtocolKind::OptimalSo:
      return optimal_encode(desc, secrets);
    case ProtocolKind::NearlyOptimal:
      return nearly_encode(desc, secrets, seeds);
  }
  throw std::logic_error("unknown protocol kind");
}

std::vector<std::uint32_t> encode(const ProtocolDescriptor& desc,
                                  std::span<const std::uint32_t> secrets,
                                  std::uint64_t rng_seed) {
  std::vector<std::uint32_t> seeds;
  switch (desc.kind) {
    case ProtocolKind::Sdssp:
      for (std::uint64_t j = 1; j <= desc.m; ++j) {
        Rng rng = Rng::keyed(rng_seed, j);
        for (std::size_t i = 0; i + 1 < desc.user_set_size(j); ++i) {
          seeds.push_back(rng.field_element(desc.q));
        }
      }
      break;
    case ProtocolKind::OptimalSo:
      break;
    case ProtocolKind::NearlyOptimal: {
      Rng rng = Rng::keyed(rng_seed, 0);
      for (int i = 0; i + 1 < desc.k; ++i) {
        seeds.push_back(rng.field_element(desc.q));
      }
      break;
    }
  }
  return encode_with_seeds(desc, secrets, seeds);
}

std::vector<std::uint32_t> sdssp_encode(const ProtocolDescriptor& desc,
                                        std::span<const std::uint32_t> secrets,
                                        std::uint64_t rng_seed) {
  if (desc.kind != ProtocolKind::Sdssp) {
    throw WrongKindError("sdssp_encode needs an sdssp descriptor");
  }
  return encode(desc, secrets, rng_seed);
}

std::uint32_t user_decode(
    const ProtocolDescriptor& desc, std::uint64_t j,
    const std::vector<std::pair<std::uint64_t, std::uint32_t>>& reads) {
  const PrimeField field = desc.field();
  const auto slots = desc.user_slots(j);
  const auto points = desc.user_points(j);
  std::vector<std::uint32_t> values(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    bool found = false;
    for (const auto& [slot, value] : reads) {
      if (slot == slots[i]) {
        values[i] = value % desc.q;
        found = true;
        break;
      }
    }
    if (!found) {
      throw MissingSlotError(slots[i], "user " + std::to_string(j) +
                                           " needs slot " +
                                           std::to_string(slots[i]) +
                                           " which was not supplied");
    }
  }
  return lagrange_at_zero(field, points, values);
}

}  // namespace dssp
