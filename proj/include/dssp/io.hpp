#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dssp/audit.hpp"
#include "dssp/design.hpp"
#include "dssp/protocol.hpp"

namespace dssp::io {

inline constexpr const char* kDescriptorFormat = "dssp-descriptor/1";
inline constexpr const char* kSecretsFormat = "dssp-secrets/1";
inline constexpr const char* kNodeFormat = "dssp-node/1";

/// Canonical serialization: sorted keys, fixed indentation, decimal
/// strings for field elements, trailing newline. parse(serialize(x))
/// equals x, and serialize is byte-stable.
std::string serialize_descriptor(const ProtocolDescriptor& desc);
ProtocolDescriptor parse_descriptor(const std::string& text);

std::string serialize_secrets(std::uint32_t q,
                              const std::vector<std::uint32_t>& values);
std::pair<std::uint32_t, std::vector<std::uint32_t>> parse_secrets(
    const std::string& text);

struct NodeFile {
  int node = 0;
  std::uint32_t q = 0;
  // (slot index, value), ascending slots.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> slots;
};

std::string serialize_node(const NodeFile& node);
NodeFile parse_node(const std::string& text);

std::string node_file_name(int node);

std::string serialize_design(const DesignSolution& sol,
                             const std::string& realizable,
                             const std::string& certificate,
                             std::uint64_t achievable_c,
                             const AccessStructure* witness);

std::string serialize_audit(const AuditReport& report);

// Small file helpers used by the CLI and tests.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dssp::io
