#pragma once

#include <vector>

namespace glvnet {

struct Case1Params {
    int d_min = 1;
    int d_max = 1;
    double alpha() const { return static_cast<double>(d_min) / d_max; }
    void validate() const;
};

struct Case2Params {
    double D_min = 1;
    double D_max = 1;
    double r_min = 1;
    double r_max = 1;
    double beta = 1;
    void validate() const;
};

/// Smallest positive root of a coexistence cubic, computed twice.
struct CubicBoundResult {
    double omega = 0;        ///< bisection root; the value callers use
    double closed_form = 0;  ///< trigonometric solution of the same cubic
    double theta = 0;        ///< argument of the arcsin in the closed form
    std::vector<double> roots;  ///< all three real roots, ascending
    double agreement = 0;    ///< |closed_form - omega|
};

/// Closed form and bisection must agree to this (scaled by max(1, omega)).
inline constexpr double kBoundAgreementTol = 1e-10;

/// P(tau) = d_max^3 alpha^2 tau^3 - d_max^2 tau^2 - d_max tau + 1.
double p_of_tau(const Case1Params& params, double tau);

/// Omega: smallest positive root of P. Lies in [((sqrt5-1)/2)/d_max, 1/d_max].
CubicBoundResult omega_case1(const Case1Params& params);

/// Numerator of the general-competition walk bound, as a polynomial in delta:
/// r_max b^2 x^3 - D_max r_min x^2 - D_max^2 r_max x + D_max D_min^2 r_min.
double case2_numerator(const Case2Params& params, double delta);

/// Omega for general competition: smallest positive root of the numerator.
/// Always <= D_min (the Gershgorin pitchfork threshold).
CubicBoundResult omega_case2(const Case2Params& params);

/// 1/(2 sqrt(d-1)): almost-sure coexistence threshold over random d-regular
/// graphs, not a per-graph guarantee.
double omega_regular(int d);

enum class Regime { LargeDMax, LargeRMax, SmallRMin };

struct RegimeRampPoint {
    double parameter;
    double theta;
    double omega;
};

struct RegimeLimit {
    double theta_limit = 0;
    double omega_limit = 0;
    std::vector<RegimeRampPoint> ramp;
};

struct RampOptions {
    double factor = 10.0;
    int steps = 9;
    /// Consecutive theta/omega changes at the end of the ramp must fall below
    /// this for the limit to count as converged.
    double settle_tol = 1e-3;
};

/// Walks the regime parameter geometrically away from `base` and reports the
/// values at the end of the ramp. Throws ConvergenceError if the last two
/// ramp points still differ by more than settle_tol.
RegimeLimit regime_limits(const Case2Params& base, Regime regime, const RampOptions& opts = {});

}  // namespace glvnet
