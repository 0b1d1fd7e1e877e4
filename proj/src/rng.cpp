#include "wsnsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace wsnsim {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Rng::Rng(std::uint64_t seed, std::string_view stream_name) {
    const std::uint64_t tag = fnv1a64(stream_name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
    gen_.seed(seq);
}

std::uint64_t Rng::next_u64() {
    return gen_();
}

double Rng::uniform() {
    // 53 random bits into [0, 1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Modulo bias is negligible for the small spans used here, but rejection
    // sampling is cheap and keeps draws exact.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return lo + static_cast<std::int64_t>(v % span);
}

double Rng::normal(double sigma) {
    // Box-Muller; u1 nudged away from zero so log() stays finite.
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
    return sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

bool Rng::bernoulli(double p) {
    return uniform() < p;
}

}  // namespace wsnsim
