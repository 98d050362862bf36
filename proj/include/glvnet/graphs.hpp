#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "glvnet/rng.hpp"

namespace glvnet {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1. Edges are stored once with
/// u < v and kept sorted; no self-loops or multi-edges.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    /// Throws std::invalid_argument on self-loops, duplicates or
    /// out-of-range endpoints. Edge orientation is irrelevant.
    UndirectedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& degrees() const noexcept { return degrees_; }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_.at(v); }

    bool has_edge(Vertex u, Vertex v) const;
    int d_min() const;
    int d_max() const;
    /// d_min / d_max.
    double alpha() const;
    bool is_connected() const;
    bool is_regular() const;

    /// Dense binary adjacency matrix A.
    Eigen::MatrixXd adjacency_matrix() const;

    UndirectedGraph without_edge(Vertex u, Vertex v) const;
    /// Vertex i of this graph becomes vertex perm[i].
    UndirectedGraph relabeled(const std::vector<Vertex>& perm) const;

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> degrees_;
    std::vector<std::vector<Vertex>> adjacency_;
};

class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<int> values);

    const std::vector<int>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    long long sum() const;
    int max() const;
    int min() const;

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

private:
    std::vector<int> values_;
};

/// Erdős–Gallai test.
bool is_graphical(const DegreeSequence& seq);

struct DegreeSamplingOptions {
    std::size_t resample_cap = 10000;
};

/// Each entry ~ Binomial(d_max, p), zeros redrawn; the whole sequence is
/// redrawn until its sum is even and it is graphical.
DegreeSequence sample_binomial_degrees(std::size_t n, int d_max, double p, Rng& rng,
                                       const DegreeSamplingOptions& opts = {});

struct ConfigurationModelOptions {
    /// Whole-graph attempts (matching failures and disconnected results).
    std::size_t attempt_cap = 10000;
    /// Redraws of a single stub pair before the matching is restarted.
    std::size_t pair_retry_cap = 200;
    bool require_connected = true;
};

/// Simple (and by default connected) graph with exactly the given degree
/// sequence, by stub matching with rejection of self-loops and multi-edges.
UndirectedGraph configuration_model(const DegreeSequence& seq, Rng& rng,
                                    const ConfigurationModelOptions& opts = {});

UndirectedGraph star(std::size_t k);
UndirectedGraph cycle(std::size_t n);
UndirectedGraph path(std::size_t n);
UndirectedGraph complete(std::size_t n);
UndirectedGraph complete_bipartite(std::size_t m, std::size_t n);
UndirectedGraph random_regular(int d, std::size_t n, Rng& rng,
                               const ConfigurationModelOptions& opts = {});

/// Parameter bundle for the named families, used by the CLI.
struct NamedGraphSpec {
    enum class Kind { Star, Cycle, Path, Complete, CompleteBipartite, RandomRegular };
    Kind kind = Kind::Star;
    std::size_t a = 0;  // k, n, or m
    std::size_t b = 0;  // second part size, or vertex count for RandomRegular
};

UndirectedGraph make_named(const NamedGraphSpec& spec, Rng& rng);
NamedGraphSpec::Kind parse_named_kind(const std::string& name);

}  // namespace glvnet
