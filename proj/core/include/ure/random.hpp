#pragma once

#include <cmath>
#include <cstdint>

namespace ure {

// Deterministic random stream used by every stochastic component.
//
// The full draw contract is spelled out below so that an independent
// implementation can reproduce any output bit for bit. All evaluation
// results (bootstrap intervals, shuffles, synthetic data) are pure
// functions of a 64-bit seed under this contract; no global or
// platform-dependent randomness is involved anywhere.
//
//   generator     splitmix64. State s is a 64-bit integer. Each draw:
//                   s += 0x9E3779B97F4A7C15
//                   z = s
//                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                   output z ^ (z >> 31)
//   derivation    derive_seed(root, n) = mix64(root + n * 0x9E3779B97F4A7C15)
//                 where mix64 applies the same three finalization steps as
//                 the generator output stage. Subsystems never share a raw
//                 seed; each derives its own stream.
//   index draw    next_index(k) = floor(next_u64() * k / 2^64), computed in
//                 128-bit arithmetic (multiply-shift reduction).
//   unit draw     next_unit() = (next_u64() >> 11) * 2^-53, in [0, 1).
//   gaussian      Box-Muller. u1 = ((next_u64() >> 11) + 1) * 2^-53 in (0, 1],
//                 u2 = next_unit(); returns sqrt(-2 ln u1) * cos(2 pi u2).
//                 Exactly two raw draws per call; the sine half is discarded.

inline constexpr std::uint64_t kSeedGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives the seed of an independent child stream from a root seed and a
/// stream number (prefix index, split index, ...).
inline constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t n) {
    return mix64(root + n * kSeedGamma);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kSeedGamma;
        return mix64(state_);
    }

    /// Uniform index in [0, bound), bound >= 1.
    std::uint64_t next_index(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate; consumes exactly two raw draws.
    double next_gaussian() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    /// Fisher-Yates shuffle, iterating i = n-1 .. 1, j = next_index(i + 1).
    template <typename T>
    void shuffle(T* data, std::size_t n) {
        for (std::size_t i = n; i-- > 1;) {
            const std::uint64_t j = next_index(i + 1);
            using std::swap;
            swap(data[i], data[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace ure
