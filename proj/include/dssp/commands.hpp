#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dssp/protocol.hpp"

namespace dssp::cli {

// Search/enumeration budget: DSSP_BUDGET overrides the fallback.
std::uint64_t budget_or_env(std::uint64_t fallback);

struct DesignArgs {
  int n = 0;
  std::uint64_t m = 0;
  std::uint64_t budget = 0;  // 0 = default
};

struct BuildArgs {
  std::string protocol;
  int n = 0;
  std::uint64_t m = 0;      // nearly
  int k = 0;                // optimal (and nearly override)
  std::uint32_t q = 0;
  std::string access;       // sdssp, e.g. "1,2;2,3;1,3"
  std::filesystem::path access_file;  // sdssp alternative
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "descriptor.json";
  std::uint64_t budget = 0;
};

struct EncodeArgs {
  std::filesystem::path descriptor;
  std::filesystem::path secrets;
  std::filesystem::path shares_dir = "shares";
  std::optional<std::uint64_t> seed;
};

struct DecodeArgs {
  std::filesystem::path descriptor;
  std::uint64_t user = 0;
  std::filesystem::path shares_dir = "shares";
  std::filesystem::path out;  // optional
};

struct AuditArgs {
  std::filesystem::path descriptor;
  std::uint64_t trials = 200;
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
};

struct BenchArgs {
  std::size_t matvec_size = 1500;
  std::size_t matmul_size = 320;
  std::size_t invert_size = 400;
  std::uint32_t q = 1'000'003;
  int repeats = 3;
};

int cmd_design(const DesignArgs& args, std::ostream& out);
int cmd_build(const BuildArgs& args, std::ostream& out);
int cmd_encode(const EncodeArgs& args, std::ostream& out);
// opened_nodes, when given, records every node file the command read.
int cmd_decode(const DecodeArgs& args, std::ostream& out,
               std::vector<int>* opened_nodes = nullptr);
int cmd_audit(const AuditArgs& args, std::ostream& out);
int cmd_bench(const BenchArgs& args, std::ostream& out);

/// Parse "1,2;2,3;1,3" into an access structure.
AccessStructure parse_access_spec(const std::string& spec);

}  // namespace dssp::cli
