#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ure::cli {

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits. A change
/// detector for the reproducibility manifest, not a cryptographic hash.
std::string fnv1a64_file(const std::filesystem::path& path);

/// Reproducibility envelope written alongside command outputs: the resolved
/// configuration (defaults materialized, thread count excluded since it
/// never affects results), content digests of every input file, and the
/// output paths. Two runs with equal manifests produce byte-identical
/// outputs.
std::string manifest_json(const std::string& command, const nlohmann::json& config,
                          std::vector<std::filesystem::path> input_files,
                          std::vector<std::string> output_paths);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace ure::cli
