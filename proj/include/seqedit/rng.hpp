#pragma once

#include <cstdint>
#include <random>

namespace seqedit {

/// Deterministic random source. All randomness in the library flows through
/// this type so that a (seed, input) pair fully determines every output.
///
/// Draw helpers avoid std distributions on purpose: their mapping from raw
/// engine output is implementation-defined, while mt19937_64 itself is fully
/// specified by the standard. The helpers below give the same stream on any
/// conforming implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, n). n must be > 0. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Derive an independent child generator for stream `stream`. Used to make
    /// per-item randomness independent of processing order and thread count.
    Rng fork(std::uint64_t stream) const {
        return Rng(splitmix64(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace seqedit
