#include "manifest.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

#include <fmt/format.h>

#include "ure/errors.hpp"
#include "ure/version.hpp"

namespace ure::cli {

std::string fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::uint64_t hash = 1469598103934665603ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ULL;
        }
    }
    return fmt::format("{:016x}", hash);
}

std::string manifest_json(const std::string& command, const nlohmann::json& config,
                          std::vector<std::filesystem::path> input_files,
                          std::vector<std::string> output_paths) {
    std::sort(input_files.begin(), input_files.end());
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& path : input_files)
        inputs.push_back({{"path", path.string()}, {"fnv1a64", fnv1a64_file(path)}});

    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool"] = std::string(kToolName);
    j["tool_version"] = std::string(kToolVersion);
    j["command"] = command;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = output_paths;
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

} // namespace ure::cli
