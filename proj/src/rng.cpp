#include "rarbench/rng.hpp"

#include <string>

#include "rarbench/sha256.hpp"

namespace rarbench {

uint64_t Rng::next_below(uint64_t n) {
    // Rejection sampling keeps the draw unbiased and identical everywhere.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        uint64_t r = next();
        if (r < limit) return r % n;
    }
}

std::vector<size_t> Rng::sample_indices(size_t n, size_t k) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(next_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

uint64_t derive_seed(uint64_t base_seed, std::string_view label) {
    std::string key = std::to_string(base_seed);
    key.push_back('\x1f');
    key.append(label);
    return sha256_prefix64(key);
}

}  // namespace rarbench
