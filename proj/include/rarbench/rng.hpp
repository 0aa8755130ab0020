#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rarbench {

// Deterministic RNG with platform-stable draws. std::shuffle and the
// distribution classes are implementation-defined, so sampling goes through
// next_below() instead.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, n) via rejection sampling; n > 0.
    uint64_t next_below(uint64_t n);

    bool coin() { return (next() & 1) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), order of first appearance in the draw.
    std::vector<size_t> sample_indices(size_t n, size_t k);

private:
    std::mt19937_64 eng_;
};

// Independent per-(task, purpose) stream derived from a base seed.
uint64_t derive_seed(uint64_t base_seed, std::string_view label);

}  // namespace rarbench
