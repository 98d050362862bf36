#include "glvnet/graphs.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "glvnet/error.hpp"

namespace glvnet {

UndirectedGraph::UndirectedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), degrees_(n, 0), adjacency_(n) {
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        ++degrees_[u];
        ++degrees_[v];
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool UndirectedGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

int UndirectedGraph::d_min() const {
    if (n_ == 0) throw std::logic_error("empty graph has no degrees");
    return *std::min_element(degrees_.begin(), degrees_.end());
}

int UndirectedGraph::d_max() const {
    if (n_ == 0) throw std::logic_error("empty graph has no degrees");
    return *std::max_element(degrees_.begin(), degrees_.end());
}

double UndirectedGraph::alpha() const {
    const int hi = d_max();
    if (hi == 0) throw std::logic_error("alpha undefined for an edgeless graph");
    return static_cast<double>(d_min()) / hi;
}

bool UndirectedGraph::is_connected() const {
    if (n_ == 0) return false;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n_;
}

bool UndirectedGraph::is_regular() const {
    return n_ > 0 && d_min() == d_max();
}

Eigen::MatrixXd UndirectedGraph::adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                              static_cast<Eigen::Index>(n_));
    for (const auto& [u, v] : edges_) {
        a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1.0;
        a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
    }
    return a;
}

UndirectedGraph UndirectedGraph::without_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    bool found = false;
    for (const auto& e : edges_) {
        if (e == Edge{u, v})
            found = true;
        else
            kept.push_back(e);
    }
    if (!found) throw std::invalid_argument("edge not present");
    return UndirectedGraph(n_, std::move(kept));
}

UndirectedGraph UndirectedGraph::relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != n_) throw std::invalid_argument("permutation size mismatch");
    std::vector<char> hit(n_, 0);
    for (Vertex p : perm) {
        if (p >= n_ || hit[p]) throw std::invalid_argument("not a permutation");
        hit[p] = 1;
    }
    std::vector<Edge> mapped;
    mapped.reserve(edges_.size());
    for (const auto& [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
    return UndirectedGraph(n_, std::move(mapped));
}

DegreeSequence::DegreeSequence(std::vector<int> values) : values_(std::move(values)) {
    for (int d : values_)
        if (d < 0) throw std::invalid_argument("degree sequence entries must be non-negative");
}

long long DegreeSequence::sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0LL);
}

int DegreeSequence::max() const {
    return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

int DegreeSequence::min() const {
    return values_.empty() ? 0 : *std::min_element(values_.begin(), values_.end());
}

bool is_graphical(const DegreeSequence& seq) {
    if (seq.sum() % 2 != 0) return false;
    std::vector<long long> d(seq.values().begin(), seq.values().end());
    std::sort(d.begin(), d.end(), std::greater<>());
    const std::size_t n = d.size();
    // suffix[k] = sum_{i >= k} d_i
    std::vector<long long> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];
    long long lhs = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += d[k - 1];
        long long rhs = static_cast<long long>(k) * static_cast<long long>(k - 1);
        for (std::size_t i = k; i < n; ++i) rhs += std::min<long long>(d[i], static_cast<long long>(k));
        if (lhs > rhs) return false;
    }
    return true;
}

DegreeSequence sample_binomial_degrees(std::size_t n, int d_max, double p, Rng& rng,
                                       const DegreeSamplingOptions& opts) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (d_max < 1) throw std::invalid_argument("d_max must be at least 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
    std::vector<int> values(n);
    for (std::size_t attempt = 0; attempt < opts.resample_cap; ++attempt) {
        for (auto& v : values) {
            do {
                v = rng.binomial(d_max, p);
            } while (v == 0);
        }
        DegreeSequence seq(values);
        if (is_graphical(seq)) return seq;
    }
    throw ResampleCapExceeded("no graphical binomial degree sequence", opts.resample_cap);
}

namespace {

// One stub-matching pass. Each step takes a stub of the vertex with the most
// unmatched stubs and pairs it with a uniformly drawn stub, rejecting
// self-loops and repeated edges. Returns false if the matching got stuck.
bool match_stubs(const DegreeSequence& seq, Rng& rng, std::size_t pair_retry_cap,
                 std::vector<Edge>& edges) {
    const std::size_t n = seq.size();
    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(seq.sum()));
    for (std::size_t v = 0; v < n; ++v)
        for (int i = 0; i < seq.values()[v]; ++i) stubs.push_back(v);
    std::vector<int> open(seq.values().begin(), seq.values().end());
    std::vector<char> adjacent(n * n, 0);
    edges.clear();
    while (!stubs.empty()) {
        const Vertex u = static_cast<Vertex>(std::max_element(open.begin(), open.end()) - open.begin());
        const std::size_t i = static_cast<std::size_t>(std::find(stubs.begin(), stubs.end(), u) - stubs.begin());
        bool placed = false;
        for (std::size_t retry = 0; retry < pair_retry_cap; ++retry) {
            std::size_t j = rng.below(stubs.size() - 1);
            if (j >= i) ++j;
            const Vertex v = stubs[j];
            if (u == v || adjacent[u * n + v]) continue;
            adjacent[u * n + v] = adjacent[v * n + u] = 1;
            edges.emplace_back(u, v);
            --open[u];
            --open[v];
            // remove the higher index first so the lower stays valid
            for (std::size_t k : {std::max(i, j), std::min(i, j)}) {
                stubs[k] = stubs.back();
                stubs.pop_back();
            }
            placed = true;
            break;
        }
        if (!placed) return false;
    }
    return true;
}

}  // namespace

UndirectedGraph configuration_model(const DegreeSequence& seq, Rng& rng,
                                    const ConfigurationModelOptions& opts) {
    if (!is_graphical(seq))
        throw std::invalid_argument("configuration_model: degree sequence is not graphical");
    std::vector<Edge> edges;
    for (std::size_t attempt = 1; attempt <= opts.attempt_cap; ++attempt) {
        if (!match_stubs(seq, rng, opts.pair_retry_cap, edges)) continue;
        UndirectedGraph g(seq.size(), edges);
        if (opts.require_connected && !g.is_connected()) continue;
        assert(g.degrees() == seq.values());
        return g;
    }
    throw ResampleCapExceeded("configuration_model: no simple connected realisation",
                              opts.attempt_cap);
}

UndirectedGraph star(std::size_t k) {
    if (k < 2) throw std::invalid_argument("star(k) needs k >= 2");
    std::vector<Edge> edges;
    for (Vertex v = 1; v < k; ++v) edges.emplace_back(0, v);
    return UndirectedGraph(k, std::move(edges));
}

UndirectedGraph cycle(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle(n) needs n >= 3");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph path(std::size_t n) {
    if (n < 2) throw std::invalid_argument("path(n) needs n >= 2");
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph complete(std::size_t n) {
    if (n < 2) throw std::invalid_argument("complete(n) needs n >= 2");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph complete_bipartite(std::size_t m, std::size_t n) {
    if (m < 1 || n < 1) throw std::invalid_argument("complete_bipartite needs both parts non-empty");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m; ++u)
        for (Vertex v = 0; v < n; ++v) edges.emplace_back(u, m + v);
    return UndirectedGraph(m + n, std::move(edges));
}

UndirectedGraph random_regular(int d, std::size_t n, Rng& rng,
                               const ConfigurationModelOptions& opts) {
    if (d < 1 || static_cast<std::size_t>(d) >= n)
        throw std::invalid_argument("random_regular needs 1 <= d < n");
    if ((static_cast<std::size_t>(d) * n) % 2 != 0)
        throw std::invalid_argument("random_regular needs d*n even");
    return configuration_model(DegreeSequence(std::vector<int>(n, d)), rng, opts);
}

UndirectedGraph make_named(const NamedGraphSpec& spec, Rng& rng) {
    using K = NamedGraphSpec::Kind;
    switch (spec.kind) {
        case K::Star: return star(spec.a);
        case K::Cycle: return cycle(spec.a);
        case K::Path: return path(spec.a);
        case K::Complete: return complete(spec.a);
        case K::CompleteBipartite: return complete_bipartite(spec.a, spec.b);
        case K::RandomRegular: return random_regular(static_cast<int>(spec.a), spec.b, rng);
    }
    throw std::invalid_argument("unknown graph kind");
}

NamedGraphSpec::Kind parse_named_kind(const std::string& name) {
    using K = NamedGraphSpec::Kind;
    if (name == "star") return K::Star;
    if (name == "cycle") return K::Cycle;
    if (name == "path") return K::Path;
    if (name == "complete") return K::Complete;
    if (name == "complete-bipartite") return K::CompleteBipartite;
    if (name == "random-regular") return K::RandomRegular;
    throw std::invalid_argument("unknown graph kind '" + name + "'");
}

}  // namespace glvnet
