#include "ure/tensor_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ure/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "tensor payloads are little-endian and read by memcpy");

namespace ure {

namespace {

std::size_t checked_element_count(const std::vector<int>& shape, const std::string& where) {
    if (shape.size() != 2 && shape.size() != 3)
        throw InputError(where + ": shape must have rank 2 or 3");
    std::size_t count = 1;
    for (const int dim : shape) {
        if (dim < 1) throw InputError(where + ": shape dimensions must be positive");
        count *= static_cast<std::size_t>(dim);
    }
    return count;
}

void write_tensor(const std::filesystem::path& path, std::span<const int> shape,
                  const char* dtype, const void* data, std::size_t bytes) {
    nlohmann::json header;
    header["byte_order"] = "little";
    header["dtype"] = dtype;
    header["shape"] = std::vector<int>(shape.begin(), shape.end());

    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    const std::string line = header.dump() + "\n";
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

} // namespace

TensorData read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    std::string header_line;
    if (!std::getline(in, header_line))
        throw InputError("'" + path.string() + "': missing header line");

    nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
    if (header.is_discarded() || !header.is_object())
        throw InputError("'" + path.string() + "': header is not a JSON object");
    for (const char* key : {"byte_order", "dtype", "shape"})
        if (!header.contains(key))
            throw InputError("'" + path.string() + "': header lacks \"" + key + "\"");
    if (header["byte_order"] != "little")
        throw InputError("'" + path.string() + "': unsupported byte order");

    TensorData tensor;
    try {
        tensor.shape = header["shape"].get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw InputError("'" + path.string() + "': shape must be an integer array");
    }
    const std::size_t count = checked_element_count(tensor.shape, "'" + path.string() + "'");

    const std::string dtype = header["dtype"].get<std::string>();
    std::size_t element_size = 0;
    if (dtype == "f32") {
        element_size = 4;
        tensor.payload = std::vector<float>(count);
    } else if (dtype == "u8") {
        element_size = 1;
        tensor.payload = std::vector<std::uint8_t>(count);
    } else {
        throw InputError("'" + path.string() + "': unsupported dtype \"" + dtype + "\"");
    }

    std::vector<char> bytes(count * element_size);
    in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size())
        throw InputError("'" + path.string() + "': payload shorter than header promises (" +
                         std::to_string(in.gcount()) + " of " + std::to_string(bytes.size()) +
                         " bytes)");
    char extra;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw InputError("'" + path.string() + "': trailing bytes after payload");

    if (tensor.is_f32())
        std::memcpy(std::get<0>(tensor.payload).data(), bytes.data(), bytes.size());
    else
        std::memcpy(std::get<1>(tensor.payload).data(), bytes.data(), bytes.size());
    return tensor;
}

void write_tensor_f32(const std::filesystem::path& path, std::span<const int> shape,
                      std::span<const float> values) {
    const std::size_t count =
        checked_element_count(std::vector<int>(shape.begin(), shape.end()), path.string());
    if (count != values.size())
        throw InputError("'" + path.string() + "': value count does not match shape");
    write_tensor(path, shape, "f32", values.data(), values.size() * sizeof(float));
}

void write_tensor_u8(const std::filesystem::path& path, std::span<const int> shape,
                     std::span<const std::uint8_t> values) {
    const std::size_t count =
        checked_element_count(std::vector<int>(shape.begin(), shape.end()), path.string());
    if (count != values.size())
        throw InputError("'" + path.string() + "': value count does not match shape");
    write_tensor(path, shape, "u8", values.data(), values.size());
}

RasterPair load_pair(const std::filesystem::path& prob_path,
                     const std::filesystem::path& mask_path) {
    const TensorData prob = read_tensor(prob_path);
    const TensorData mask = read_tensor(mask_path);

    if (!prob.is_f32())
        throw InputError("'" + prob_path.string() + "': probability map must have dtype f32");
    if (mask.is_f32())
        throw InputError("'" + mask_path.string() + "': label mask must have dtype u8");
    if (mask.shape.size() != 2)
        throw InputError("'" + mask_path.string() + "': label mask must have rank 2");

    const int height = prob.shape[0];
    const int width = prob.shape[1];
    const int channels = prob.shape.size() == 3 ? prob.shape[2] : 1;
    if (mask.shape[0] != height || mask.shape[1] != width)
        throw InputError("shape mismatch: '" + prob_path.string() + "' is " +
                         std::to_string(height) + "x" + std::to_string(width) + " but '" +
                         mask_path.string() + "' is " + std::to_string(mask.shape[0]) + "x" +
                         std::to_string(mask.shape[1]));

    std::vector<double> probabilities(prob.f32().begin(), prob.f32().end());
    return RasterPair(height, width, channels, std::move(probabilities), mask.u8());
}

} // namespace ure
