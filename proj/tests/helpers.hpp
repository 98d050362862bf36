#pragma once

#include <Eigen/Dense>

#include <vector>

#include "glvnet/graphs.hpp"
#include "glvnet/rng.hpp"

namespace testing {

// Connected G(n, p) sample, redrawn until connected.
inline glvnet::UndirectedGraph connected_gnp(std::size_t n, double p, glvnet::Rng& rng) {
    for (;;) {
        std::vector<glvnet::Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (rng.uniform() < p) edges.emplace_back(u, v);
        glvnet::UndirectedGraph g(n, std::move(edges));
        if (g.is_connected()) return g;
    }
}

inline std::vector<glvnet::Vertex> random_permutation(std::size_t n, glvnet::Rng& rng) {
    std::vector<glvnet::Vertex> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

inline bool triangle_free(const glvnet::UndirectedGraph& g) {
    for (const auto& [u, v] : g.edges())
        for (auto w : g.neighbours(u))
            if (w != v && g.has_edge(v, w)) return false;
    return true;
}

}  // namespace testing
