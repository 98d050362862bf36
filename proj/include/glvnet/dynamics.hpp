#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "glvnet/glv.hpp"
#include "glvnet/rng.hpp"

namespace glvnet {

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    bool converged = false;
    double convergence_time = 0;  ///< time at which convergence was detected
    Eigen::VectorXd final_state;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

struct IntegrateOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double t_end = 1e4;
    /// Store every k-th accepted step (0 keeps only the endpoints).
    std::size_t record_every = 1;
    /// Stop once |rhs|_inf < 10 atol.
    bool stop_on_convergence = true;
    std::size_t max_steps = 10'000'000;
    double h_min = 1e-14;
};

/// x o (r + M x).
Eigen::VectorXd rhs(const InteractionSystem& sys, const Eigen::VectorXd& x);

/// Dormand–Prince 5(4) with error-per-step control. Components that drop
/// below atol in magnitude are set to exactly 0; a step that would push a
/// component below -atol is rejected and retried with a smaller step.
Trajectory integrate(const InteractionSystem& sys, const Eigen::VectorXd& x0,
                     const IntegrateOptions& opts = {});

/// Fixed-step fifth-order Dormand–Prince propagation to t_end in `steps`
/// steps; used to check the method's order.
Eigen::VectorXd integrate_fixed_step(const InteractionSystem& sys, const Eigen::VectorXd& x0,
                                     double t_end, std::size_t steps);

struct TrialFailure {
    Eigen::VectorXd x0;
    Eigen::VectorXd final_state;
    double distance = 0;  ///< |final - x*|_inf
};

struct StabilityCheck {
    double fraction = 0;
    std::size_t trials = 0;
    Eigen::VectorXd x_star;
    double max_distance = 0;
    std::vector<TrialFailure> failures;
};

struct StabilityOptions {
    double tolerance = 1e-5;
    double x0_low = 1e-3;
    double x0_high = 10.0;
    unsigned threads = 1;
    IntegrateOptions integrate;
};

/// Integrates from `trials` log-uniform random starts and reports the
/// fraction that ends within `tolerance` of x*. Trial i uses the stream
/// Rng::derive(rng.next() drawn once, i), so results do not depend on the
/// thread count. Requires x* feasible and M negative definite.
StabilityCheck verify_global_stability(const InteractionSystem& sys, std::size_t trials, Rng& rng,
                                       const StabilityOptions& opts = {});

}  // namespace glvnet
