#include "glvnet/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glvnet/error.hpp"

namespace glvnet {

const char* to_string(BifurcationKind k) {
    return k == BifurcationKind::Transcritical ? "Transcritical" : "Pitchfork";
}

InteriorEquilibriumCurve::InteriorEquilibriumCurve(const UndirectedGraph& g)
    : eig_(eigen_decompose(SymmetricMatrix(g.adjacency_matrix()))),
      weights_(eig_.eigenvectors.transpose() *
               Eigen::VectorXd::Ones(static_cast<Eigen::Index>(g.order()))) {}

Eigen::VectorXd InteriorEquilibriumCurve::at(double tau) const {
    const Eigen::VectorXd scaled =
        weights_.cwiseQuotient((tau * eig_.eigenvalues).array().matrix() +
                               Eigen::VectorXd::Ones(weights_.size()));
    return eig_.eigenvectors * scaled;
}

double tau_pitch(const UndirectedGraph& g) {
    if (g.size() == 0) return std::numeric_limits<double>::infinity();
    const double lmin = eig_symmetric(SymmetricMatrix(g.adjacency_matrix())).min();
    return 1.0 / std::abs(lmin);
}

namespace {

struct TransPoint {
    double tau;
    Vertex vertex;
};

std::optional<TransPoint> locate_transcritical(const InteriorEquilibriumCurve& curve, double pitch,
                                               const BifurcationOptions& opts) {
    if (!(opts.scan_step > 0 && opts.scan_step < 1) || !(opts.tol > 0))
        throw std::invalid_argument("tau_trans: need 0 < scan_step < 1 and tol > 0");
    const auto steps = static_cast<long>(std::ceil(1.0 / opts.scan_step));
    const double h = pitch / static_cast<double>(steps);
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (long j = 1; j < steps; ++j) {
        const double tau = h * static_cast<double>(j);
        if (curve.min_component(tau) <= 0) {
            lo = h * static_cast<double>(j - 1);
            hi = tau;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) return std::nullopt;
    double f_lo = curve.min_component(lo);
    int it = 0;
    while (!(hi - lo <= opts.tol && std::abs(f_lo) <= opts.tol)) {
        if (++it > opts.max_bisections)
            throw ConvergenceError("tau_trans: tolerance not reached within iteration cap");
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at machine resolution
        const double f = curve.min_component(mid);
        if (f > 0) {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
        }
    }
    Eigen::Index vertex = 0;
    curve.at(hi).minCoeff(&vertex);
    return TransPoint{lo, static_cast<Vertex>(vertex)};
}

void require_classifiable(const UndirectedGraph& g) {
    if (g.size() == 0) throw std::invalid_argument("classify: graph has no edges");
    if (!g.is_connected()) throw std::invalid_argument("classify: graph is not connected");
}

}  // namespace

std::optional<double> tau_trans(const UndirectedGraph& g, const BifurcationOptions& opts) {
    if (g.size() == 0) return std::nullopt;
    InteriorEquilibriumCurve curve(g);
    const auto t = locate_transcritical(curve, 1.0 / std::abs(curve.lambda_min()), opts);
    if (!t) return std::nullopt;
    return t->tau;
}

BifurcationReport classify(const UndirectedGraph& g, const BifurcationOptions& opts) {
    require_classifiable(g);
    InteriorEquilibriumCurve curve(g);
    BifurcationReport rep;
    rep.tau_pitch = 1.0 / std::abs(curve.lambda_min());
    if (const auto t = locate_transcritical(curve, rep.tau_pitch, opts)) {
        rep.tau_trans = t->tau;
        rep.vanishing_vertex = t->vertex;
        rep.kind = BifurcationKind::Transcritical;
        rep.tau_c = t->tau;
    } else {
        rep.kind = BifurcationKind::Pitchfork;
        rep.tau_c = rep.tau_pitch;
    }
    return rep;
}

SaturatedState saturated_equilibrium(const InteractionSystem& sys,
                                     std::vector<Eigen::Index> support) {
    const Eigen::Index n = sys.size();
    if (support.empty())
        for (Eigen::Index i = 0; i < n; ++i) support.push_back(i);
    std::sort(support.begin(), support.end());
    const Eigen::MatrixXd k = sys.regularised_competition().entries();
    const Eigen::VectorXd& r = sys.growth();
    const double invade_tol = 1e-12 * r.cwiseAbs().maxCoeff();

    for (Eigen::Index iter = 0; iter < 4 * n + 4; ++iter) {
        SaturatedState st;
        st.x = Eigen::VectorXd::Zero(n);
        st.support = support;
        const auto m = static_cast<Eigen::Index>(support.size());
        if (m > 0) {
            Eigen::MatrixXd ks(m, m);
            Eigen::VectorXd rs(m);
            for (Eigen::Index a = 0; a < m; ++a) {
                rs(a) = r(support[a]);
                for (Eigen::Index b = 0; b < m; ++b) ks(a, b) = k(support[a], support[b]);
            }
            Eigen::LLT<Eigen::MatrixXd> llt(ks);
            if (llt.info() != Eigen::Success) {
                const Eigen::VectorXd xs = ks.partialPivLu().solve(rs);
                for (Eigen::Index a = 0; a < m; ++a) st.x(support[a]) = xs(a);
                st.stable = false;
                return st;
            }
            const Eigen::VectorXd xs = llt.solve(rs);
            Eigen::Index worst = 0;
            if (xs.minCoeff(&worst) <= 0) {
                support.erase(support.begin() + worst);
                continue;
            }
            for (Eigen::Index a = 0; a < m; ++a) st.x(support[a]) = xs(a);
        }
        // Invasion rates r_i - (K x)_i of the excluded species.
        const Eigen::VectorXd growth = r - k * st.x;
        Eigen::Index invader = -1;
        double best = invade_tol;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::binary_search(support.begin(), support.end(), i)) continue;
            if (growth(i) > best) {
                best = growth(i);
                invader = i;
            }
        }
        if (invader >= 0) {
            support.insert(std::upper_bound(support.begin(), support.end(), invader), invader);
            continue;
        }
        st.stable = true;
        return st;
    }
    throw ConvergenceError("saturated_equilibrium: active set did not settle");
}

std::vector<BranchSample> branch(const UndirectedGraph& g, const std::vector<double>& tau_grid) {
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
        throw std::invalid_argument("branch: tau grid must be ascending");
    std::vector<BranchSample> out;
    out.reserve(tau_grid.size());
    std::vector<Eigen::Index> support;
    for (double tau : tau_grid) {
        const InteractionSystem sys = constant_competition(g, tau);
        SaturatedState st = saturated_equilibrium(sys, support);
        BranchSample s;
        s.tau = tau;
        s.feasible = static_cast<Eigen::Index>(st.support.size()) == sys.size() && st.x.minCoeff() > 0;
        s.stable = st.stable;
        s.x_star = std::move(st.x);
        if (st.stable) support = std::move(st.support);
        out.push_back(std::move(s));
    }
    return out;
}

Fig2Pair find_fig2_pair(std::size_t n, Rng& rng, const Fig2SearchOptions& opts) {
    if (n < 4) throw std::invalid_argument("find_fig2_pair: need n >= 4");
    for (std::size_t tried = 1; tried <= opts.budget; ++tried) {
        const double p = rng.uniform(opts.p_low, opts.p_high);
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.uniform() < p) edges.emplace_back(u, v);
        UndirectedGraph g(n, std::move(edges));
        if (!g.is_connected()) continue;
        const BifurcationReport rg = classify(g, opts.bifurcation);
        for (const auto& [u, v] : g.edges()) {
            UndirectedGraph h = g.without_edge(u, v);
            if (!h.is_connected()) continue;
            BifurcationReport rh = classify(h, opts.bifurcation);
            if (rh.kind != rg.kind)
                return Fig2Pair{std::move(g), std::move(h), Edge{u, v}, rg, std::move(rh), tried};
        }
    }
    throw ResampleCapExceeded("find_fig2_pair: no pair with differing bifurcation kinds",
                              opts.budget);
}

}  // namespace glvnet
