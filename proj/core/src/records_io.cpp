#include "ure/records_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "ure/errors.hpp"

namespace ure {

namespace {

double parse_unit_value(const std::string& text, const char* field, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE)
        throw InputError("line " + std::to_string(line) + ": cannot parse " + field + " '" +
                         text + "'");
    if (!(value >= 0.0 && value <= 1.0))
        throw InputError("line " + std::to_string(line) + ": " + field + " " + text +
                         " outside [0, 1]");
    return value;
}

void check_id(const std::string& id, std::size_t line) {
    if (id.empty()) throw InputError("line " + std::to_string(line) + ": empty id");
    if (id.find_first_of(",\"\r\n") != std::string::npos)
        throw InputError("line " + std::to_string(line) +
                         ": id contains a comma, quote or line break");
}

} // namespace

std::vector<EvaluationRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw InputError("'" + path.string() + "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,score,confidence")
        throw InputError("'" + path.string() + "': expected header 'id,score,confidence', got '" +
                         line + "'");

    std::vector<EvaluationRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": expected 3 fields");

        EvaluationRecord record;
        record.id = line.substr(0, c1);
        check_id(record.id, line_no);
        record.score = parse_unit_value(line.substr(c1 + 1, c2 - c1 - 1), "score", line_no);
        record.confidence = parse_unit_value(line.substr(c2 + 1), "confidence", line_no);
        records.push_back(std::move(record));
    }

    validate_records(records); // catches duplicate ids
    return records;
}

std::string records_to_csv(std::span<const EvaluationRecord> records) {
    std::string out = "id,score,confidence\n";
    for (const auto& r : records)
        out += fmt::format("{},{:.9g},{:.9g}\n", r.id, r.score, r.confidence);
    return out;
}

void write_records(std::span<const EvaluationRecord> records,
                   const std::filesystem::path& path) {
    for (std::size_t i = 0; i < records.size(); ++i) check_id(records[i].id, i + 2);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    const std::string csv = records_to_csv(records);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

} // namespace ure
