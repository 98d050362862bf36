#pragma once

#include <cstdint>
#include <random>

namespace glvnet {

/// Seeded random source. All conversions from raw bits are done here rather
/// than through <random> distributions, whose output is not specified by the
/// standard; this keeps sweeps byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Independent stream for (master, a, b, c); fixed splitting so that
    /// parallel tasks never share state.
    static Rng derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0);
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                     std::uint64_t b = 0, std::uint64_t c = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1), 53 random bits.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound);
    /// Binomial(trials, p) as a sum of Bernoulli draws.
    int binomial(int trials, double p);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace glvnet
