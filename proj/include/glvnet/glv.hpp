#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "json.hpp"

#include "glvnet/graphs.hpp"
#include "glvnet/spectra.hpp"

namespace glvnet {

struct Case2Params;

/// Competitive GLV system dx/dt = x o (r + M x) with M = -T - diag(D).
///
/// r > 0 and D > 0 componentwise; T is symmetric, non-negative, and has a
/// zero diagonal (all self-interaction lives in D).
class InteractionSystem {
public:
    InteractionSystem(Eigen::VectorXd r, SymmetricMatrix t, Eigen::VectorXd d);

    Eigen::Index size() const noexcept { return r_.size(); }
    const Eigen::VectorXd& growth() const noexcept { return r_; }
    const SymmetricMatrix& competition() const noexcept { return t_; }
    const Eigen::VectorXd& self_regulation() const noexcept { return d_; }

    /// M = -T - diag(D).
    SymmetricMatrix interaction_matrix() const;
    /// T + diag(D) = -M, the matrix factorised for the equilibrium.
    SymmetricMatrix regularised_competition() const;

    Eigen::VectorXd row_sums() const;
    /// Largest row sum of T.
    double delta() const;
    /// Smallest over largest row sum of T (1 when T = 0).
    double beta() const;
    double r_min() const { return r_.minCoeff(); }
    double r_max() const { return r_.maxCoeff(); }
    double d_min() const { return d_.minCoeff(); }
    double d_max() const { return d_.maxCoeff(); }
    Case2Params case2_params() const;

    /// Subsystem on the listed species.
    InteractionSystem restricted(const std::vector<Eigen::Index>& species) const;

private:
    Eigen::VectorXd r_;
    SymmetricMatrix t_;
    Eigen::VectorXd d_;
};

/// r = 1, T = tau*A, D = 1. tau = 0 gives decoupled logistic growth.
InteractionSystem constant_competition(const UndirectedGraph& g, double tau);

struct EquilibriumReport {
    Eigen::VectorXd x_star;
    bool feasible = false;
    bool stable = false;
    double min_component = 0.0;
};

/// Interior point solving (T + D) x = r. Throws PastPitchfork when T + D is
/// not positive definite; the exception carries lambda_max(M) >= 0.
EquilibriumReport equilibrium(const InteractionSystem& sys);

/// J_ij = x_i M_ij. x must be strictly positive.
Eigen::MatrixXd jacobian_at(const InteractionSystem& sys, const Eigen::VectorXd& x);

/// Partial sum of sum_i (-1)^i (D^-1 T)^i D^-1 r with `terms` terms.
/// Throws ConvergenceError if the terms stop shrinking (spectral radius of
/// D^-1 T at least 1).
Eigen::VectorXd equilibrium_neumann(const InteractionSystem& sys, int terms);

/// Walk-counting lower bound on every component of x* for the constant
/// competition system on g:
///   (1 - dM t - dM^2 t^2 + dm^2 dM t^3) / ((dm^2 t^2 - 1)(dM^2 t^2 - 1)).
/// Requires tau * d_max < 1.
double walk_bound_lower(const UndirectedGraph& g, double tau);

/// General-competition analogue in terms of D_min, D_max, r_min, r_max, beta
/// and delta. Requires delta < D_min.
double walk_bound_lower(const InteractionSystem& sys);

nlohmann::json to_json(const InteractionSystem& sys);
/// {"r": [...], "D": [...], "T": [[i, j, w], ...]} with each unordered pair
/// listed at most once.
InteractionSystem system_from_json(const nlohmann::json& j);

}  // namespace glvnet
