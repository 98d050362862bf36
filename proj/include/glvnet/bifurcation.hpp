#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "glvnet/glv.hpp"
#include "glvnet/graphs.hpp"
#include "glvnet/rng.hpp"

namespace glvnet {

enum class BifurcationKind { Transcritical, Pitchfork };

const char* to_string(BifurcationKind k);

struct BifurcationReport {
    std::optional<double> tau_trans;
    double tau_pitch = 0;
    double tau_c = 0;
    BifurcationKind kind = BifurcationKind::Pitchfork;
    std::optional<Vertex> vanishing_vertex;
};

struct BifurcationOptions {
    /// Scan step as a fraction of tau_pitch.
    double scan_step = 1e-3;
    double tol = 1e-9;
    int max_bisections = 200;
};

/// x*(tau) = (tau A + I)^-1 1 for one graph, evaluated through the
/// eigendecomposition of A so each tau costs O(n^2).
class InteriorEquilibriumCurve {
public:
    explicit InteriorEquilibriumCurve(const UndirectedGraph& g);

    Eigen::VectorXd at(double tau) const;
    double min_component(double tau) const { return at(tau).minCoeff(); }
    double lambda_min() const { return eig_.eigenvalues(0); }

private:
    EigenDecomposition eig_;
    Eigen::VectorXd weights_;  // V^T 1
};

/// 1/|lambda_min(A)|: where -tau A - I stops being negative definite.
/// +infinity for an edgeless graph.
double tau_pitch(const UndirectedGraph& g);

/// Smallest tau in (0, tau_pitch) at which the minimum component of x*
/// reaches zero. Scans tau_pitch * j * scan_step for j < 1/scan_step, then
/// bisects. Near tau_pitch every component not orthogonal to the unstable
/// eigenvector diverges; a sign change inside the final scan step is that
/// divergence, so it is attributed to the pitchfork.
std::optional<double> tau_trans(const UndirectedGraph& g, const BifurcationOptions& opts = {});

/// Requires a connected graph with at least one edge.
BifurcationReport classify(const UndirectedGraph& g, const BifurcationOptions& opts = {});

/// Stable state of a competitive system restricted to a support set: the
/// species outside the support are at zero, those inside solve the
/// restricted linear system, and no excluded species can invade.
struct SaturatedState {
    Eigen::VectorXd x;
    std::vector<Eigen::Index> support;
    bool stable = false;  ///< restricted T + D positive definite
};

/// Active-set search starting from `support` (all species when empty).
/// Species whose component is non-positive are dropped one at a time
/// (smallest first); excluded species with positive invasion rate are added
/// back. If the restricted matrix is indefinite the LU solution on the
/// current support is returned with stable = false.
SaturatedState saturated_equilibrium(const InteractionSystem& sys,
                                     std::vector<Eigen::Index> support = {});

struct BranchSample {
    double tau = 0;
    Eigen::VectorXd x_star;
    bool feasible = false;  ///< every species present with positive density
    bool stable = false;
};

/// Equilibrium curve over an ascending tau grid. Once species vanish the
/// surviving support is carried forward to later grid points.
std::vector<BranchSample> branch(const UndirectedGraph& g, const std::vector<double>& tau_grid);

struct Fig2Pair {
    UndirectedGraph graph;
    UndirectedGraph reduced;  ///< graph without `removed`
    Edge removed;
    BifurcationReport graph_report;
    BifurcationReport reduced_report;
    std::size_t graphs_tried = 0;
};

struct Fig2SearchOptions {
    std::size_t budget = 200000;
    double p_low = 0.25;
    double p_high = 0.8;
    BifurcationOptions bifurcation;
};

/// Searches random connected n-vertex graphs G for an edge e with G - e
/// connected and classify(G).kind != classify(G - e).kind.
Fig2Pair find_fig2_pair(std::size_t n, Rng& rng, const Fig2SearchOptions& opts = {});

}  // namespace glvnet
