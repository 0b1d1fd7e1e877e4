#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnsim {

// Deterministic random stream. A run owns one seed; every consumer derives
// its own named substream so that, e.g., changing how many link-loss draws
// happen never shifts node placement. Uniform/normal are generated from raw
// mt19937_64 output (not std::*_distribution) so byte-identical results do
// not depend on the standard library version.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream_name);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Integer uniform in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    // Gaussian with mean 0 and the given sigma (Box-Muller, no caching:
    // every call consumes exactly two uniforms).
    double normal(double sigma);
    // Bernoulli draw.
    bool bernoulli(double p);

private:
    std::mt19937_64 gen_;
};

// FNV-1a hash used to derive substream seeds from names.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace wsnsim
