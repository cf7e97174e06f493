#ifndef TUAV_RNG_HPP
#define TUAV_RNG_HPP

#include <cstdint>
#include <random>

namespace tuav {

// Deterministic random source. mt19937_64 has a standard-mandated output
// sequence, and the derived draws below avoid the implementation-defined
// std::*_distribution adaptors, so a seed reproduces the same stream on
// every platform and compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [lo, hi). Returns exactly lo when lo == hi.
    double uniform_double(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform in {0, ..., n-1}, unbiased via rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % n;
    }

private:
    std::mt19937_64 gen_;
};

// SplitMix64 mixing step; used for seed derivation in the harness.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace tuav

#endif
