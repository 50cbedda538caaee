#pragma once

// Portable seeded sampling. std::mt19937_64 output is fixed by the standard;
// the distributions in <random> are not, so bounded draws are done here.

#include <cstdint>
#include <random>
#include <string_view>

namespace nstar {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long long uniform(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(engine_() % span);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

/// FNV-1a over the seed bytes followed by the label.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 14695981039346656037ull;
    for (int b = 0; b < 8; ++b) {
        h ^= (seed >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
    }
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace nstar
