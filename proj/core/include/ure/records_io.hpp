#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "ure/records.hpp"

namespace ure {

// Records file: CSV with header `id,score,confidence`, one row per sample.
// Ids must not contain commas, quotes or line breaks (they are file stems in
// practice). Values are written with 9 significant digits, the documented
// round-trip precision of the format.

/// Parses and validates a records file. Errors report the 1-based line
/// number; range violations name the offending value.
std::vector<EvaluationRecord> read_records(const std::filesystem::path& path);

void write_records(std::span<const EvaluationRecord> records,
                   const std::filesystem::path& path);

/// The CSV bytes write_records would produce.
std::string records_to_csv(std::span<const EvaluationRecord> records);

} // namespace ure
