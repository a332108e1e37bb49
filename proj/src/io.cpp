#include "dssp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dssp::io {

using nlohmann::json;

namespace {

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_dec(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a decimal string");
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(std::string(what) + " is not a decimal string: " + s);
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw FormatError(std::string(what) + " out of range: " + s);
  }
}

std::uint32_t parse_elem(const json& j, const char* what) {
  std::uint64_t v = parse_dec(j, what);
  if (v > UINT32_MAX) throw FormatError(std::string(what) + " out of range");
  return static_cast<std::uint32_t>(v);
}

json elems_to_json(std::span<const std::uint32_t> values) {
  json arr = json::array();
  for (std::uint32_t v : values) arr.push_back(dec(v));
  return arr;
}

std::vector<std::uint32_t> elems_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::uint32_t> out;
  for (const auto& v : arr) out.push_back(parse_elem(v, what));
  return out;
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key: ") + key);
  return *it;
}

std::string dump_canonical(const json& j) {
  // nlohmann objects iterate in sorted key order, so this is stable.
  return j.dump(2) + "\n";
}

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw FormatError(std::string(what) + " is not valid JSON");
  }
  return j;
}

}  // namespace

std::string serialize_descriptor(const ProtocolDescriptor& desc) {
  json j;
  j["format"] = kDescriptorFormat;
  j["kind"] = kind_name(desc.kind);
  j["n"] = desc.n;
  j["m"] = desc.m;
  j["q"] = desc.q;
  j["k"] = desc.k;
  j["h"] = desc.h;
  j["seed"] = dec(desc.build_seed);
  json access = json::array();
  for (const auto& set : desc.access.sets) access.push_back(set.elements);
  j["access"] = access;
  j["points"] = elems_to_json(desc.points);
  j["storing"] = desc.storing.node_of_slot;
  json encoder;
  switch (desc.kind) {
    case ProtocolKind::Sdssp:
      encoder = json::object();
      break;
    case ProtocolKind::OptimalSo: {
      json rows = json::array();
      const Matrix& e = *desc.encoding_matrix;
      for (std::size_t r = 0; r < e.rows(); ++r) {
        rows.push_back(elems_to_json(std::span<const std::uint32_t>(
            e.data().data() + r * e.cols(), e.cols())));
      }
      encoder["matrix"] = rows;
      break;
    }
    case ProtocolKind::NearlyOptimal:
      encoder["mix"] = elems_to_json(desc.tail_mix);
      break;
  }
  j["encoder"] = encoder;
  return dump_canonical(j);
}

ProtocolDescriptor parse_descriptor(const std::string& text) {
  json j = parse_json(text, "descriptor");
  if (require(j, "format") != kDescriptorFormat) {
    throw FormatError("unsupported descriptor format tag");
  }
  ProtocolDescriptor desc;
  desc.kind = kind_from_name(require(j, "kind").get<std::string>());
  desc.n = require(j, "n").get<int>();
  desc.m = require(j, "m").get<std::uint64_t>();
  desc.q = require(j, "q").get<std::uint32_t>();
  desc.k = require(j, "k").get<int>();
  desc.h = require(j, "h").get<std::uint64_t>();
  desc.build_seed = parse_dec(require(j, "seed"), "seed");
  for (const auto& set : require(j, "access")) {
    KSubset s;
    for (const auto& e : set) s.elements.push_back(e.get<int>());
    desc.access.sets.push_back(std::move(s));
  }
  desc.points = elems_from_json(require(j, "points"), "points");
  for (const auto& node : require(j, "storing")) {
    desc.storing.node_of_slot.push_back(node.get<int>());
  }
  const json& encoder = require(j, "encoder");
  switch (desc.kind) {
    case ProtocolKind::Sdssp:
      break;
    case ProtocolKind::OptimalSo: {
      const json& rows = require(encoder, "matrix");
      std::vector<std::uint32_t> entries;
      std::size_t ncols = 0;
      for (const auto& row : rows) {
        auto vals = elems_from_json(row, "matrix row");
        if (ncols == 0) ncols = vals.size();
        if (vals.size() != ncols) {
          throw FormatError("ragged encoding matrix");
        }
        entries.insert(entries.end(), vals.begin(), vals.end());
      }
      if (rows.size() != desc.m || ncols != desc.m) {
        throw FormatError("encoding matrix shape mismatch");
      }
      desc.encoding_matrix =
          Matrix(PrimeField(desc.q), rows.size(), ncols, std::move(entries));
      break;
    }
    case ProtocolKind::NearlyOptimal:
      desc.tail_mix = elems_from_json(require(encoder, "mix"), "mix");
      break;
  }
  // Cheap structural validation; deep checks belong to the audit.
  if (desc.storing.node_of_slot.size() != desc.h) {
    throw FormatError("storing map length disagrees with h");
  }
  if (desc.access.sets.size() != desc.m) {
    throw FormatError("access structure size disagrees with m");
  }
  return desc;
}

std::string serialize_secrets(std::uint32_t q,
                              const std::vector<std::uint32_t>& values) {
  json j;
  j["format"] = kSecretsFormat;
  j["q"] = q;
  j["values"] = elems_to_json(values);
  return dump_canonical(j);
}

std::pair<std::uint32_t, std::vector<std::uint32_t>> parse_secrets(
    const std::string& text) {
  json j = parse_json(text, "secrets file");
  if (require(j, "format") != kSecretsFormat) {
    throw FormatError("unsupported secrets format tag");
  }
  std::uint32_t q = require(j, "q").get<std::uint32_t>();
  return {q, elems_from_json(require(j, "values"), "values")};
}

std::string serialize_node(const NodeFile& node) {
  json j;
  j["format"] = kNodeFormat;
  j["node"] = node.node;
  j["q"] = node.q;
  json slots = json::array();
  for (const auto& [slot, value] : node.slots) {
    slots.push_back(json::array({slot, dec(value)}));
  }
  j["slots"] = slots;
  return dump_canonical(j);
}

NodeFile parse_node(const std::string& text) {
  json j = parse_json(text, "node file");
  if (require(j, "format") != kNodeFormat) {
    throw FormatError("unsupported node format tag");
  }
  NodeFile node;
  node.node = require(j, "node").get<int>();
  node.q = require(j, "q").get<std::uint32_t>();
  for (const auto& pair : require(j, "slots")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw FormatError("node slot entries must be [slot, value] pairs");
    }
    node.slots.emplace_back(pair[0].get<std::uint64_t>(),
                            parse_elem(pair[1], "slot value"));
  }
  return node;
}

std::string node_file_name(int node) {
  return "node_" + std::to_string(node) + ".json";
}

std::string serialize_design(const DesignSolution& sol,
                             const std::string& realizable,
                             const std::string& certificate,
                             std::uint64_t achievable_c,
                             const AccessStructure* witness) {
  json j;
  j["n"] = sol.n;
  j["m"] = sol.m;
  j["split_size"] = sol.i;
  j["alpha"] = json::array({sol.alpha_i.str(), sol.alpha_i1.str()});
  json profile = json::object();
  for (const auto& [k, a] : sol.a) profile[std::to_string(k)] = a;
  j["profile"] = profile;
  j["psi_star"] = sol.psi_star.str();
  j["c_star"] = sol.c_star;
  j["realizable"] = realizable;
  if (!certificate.empty()) j["certificate"] = certificate;
  if (achievable_c > 0) j["achievable_c"] = achievable_c;
  if (witness) {
    json sets = json::array();
    for (const auto& s : witness->sets) sets.push_back(s.elements);
    j["witness"] = sets;
  }
  return dump_canonical(j);
}

std::string serialize_audit(const AuditReport& report) {
  json j;
  j["pass"] = report.pass();
  json correctness;
  correctness["pass"] = report.correctness.pass;
  correctness["exhaustive"] = report.correctness.exhaustive;
  correctness["cases"] = report.correctness.cases;
  if (!report.correctness.counterexample.empty()) {
    correctness["counterexample"] = report.correctness.counterexample;
  }
  j["correctness"] = correctness;
  json sperner;
  sperner["pass"] = report.sperner_pass;
  if (!report.sperner_witness.empty()) {
    sperner["witness"] = report.sperner_witness;
  }
  j["sperner"] = sperner;
  json secrecy;
  secrecy["method"] = report.secrecy_method;
  std::uint64_t passed = 0;
  json failures = json::array();
  for (const auto& v : report.secrecy) {
    if (v.pass) {
      ++passed;
    } else {
      json f;
      f["observer"] = v.observer;
      f["target"] = v.target;
      f["witness"] = v.witness;
      failures.push_back(f);
    }
  }
  secrecy["pairs"] = report.secrecy.size();
  secrecy["passed"] = passed;
  if (!failures.empty()) secrecy["failures"] = failures;
  j["secrecy"] = secrecy;
  json metric;
  metric["so"] = report.metric.so.str();
  metric["so_expected"] = report.metric.so_expected.str();
  metric["comm"] = report.metric.comm;
  metric["comm_lower"] = report.metric.comm_lower;
  metric["users_max"] = report.metric.users_max;
  j["metrics"] = metric;
  return dump_canonical(j);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  out << text;
}

}  // namespace dssp::io
