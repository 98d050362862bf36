#include "glvnet/rng.hpp"

#include <stdexcept>

namespace glvnet {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return splitmix64(s ^ c);
}

Rng Rng::derive(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return Rng(derive_seed(master, a, b, c));
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

int Rng::binomial(int trials, double p) {
    int k = 0;
    for (int i = 0; i < trials; ++i)
        if (uniform() < p) ++k;
    return k;
}

}  // namespace glvnet
