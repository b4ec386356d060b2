#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "ure/raster.hpp"

namespace ure {

// Self-describing tensor container:
//   line 1   JSON header {"byte_order":"little","dtype":"f32"|"u8",
//            "shape":[H,W] or [H,W,C]}, terminated by '\n'
//   rest     raw row-major payload, little-endian, exactly
//            product(shape) * sizeof(dtype) bytes
// "u8" is only valid for label masks; probability maps are "f32".

struct TensorData {
    std::vector<int> shape; // [H, W] or [H, W, C]
    std::variant<std::vector<float>, std::vector<std::uint8_t>> payload;

    bool is_f32() const { return payload.index() == 0; }
    const std::vector<float>& f32() const { return std::get<0>(payload); }
    const std::vector<std::uint8_t>& u8() const { return std::get<1>(payload); }
};

TensorData read_tensor(const std::filesystem::path& path);
void write_tensor_f32(const std::filesystem::path& path, std::span<const int> shape,
                      std::span<const float> values);
void write_tensor_u8(const std::filesystem::path& path, std::span<const int> shape,
                     std::span<const std::uint8_t> values);

/// Reads a probability map ("f32", [H,W] or [H,W,C]) and a label mask ("u8",
/// [H,W]) and assembles a validated RasterPair. Every failure mode (missing
/// file, malformed header, payload size, dtype role, shape mismatch,
/// normalization, label range) raises a distinct InputError diagnostic.
RasterPair load_pair(const std::filesystem::path& prob_path,
                     const std::filesystem::path& mask_path);

} // namespace ure
