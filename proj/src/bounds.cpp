#include "glvnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "glvnet/error.hpp"

namespace glvnet {

void Case1Params::validate() const {
    if (d_min < 1 || d_max < d_min)
        throw std::invalid_argument("Case1Params: need 1 <= d_min <= d_max");
}

void Case2Params::validate() const {
    const bool ok = D_min > 0 && D_max >= D_min && r_min > 0 && r_max >= r_min && beta > 0 &&
                    beta <= 1 && std::isfinite(D_max) && std::isfinite(r_max);
    if (!ok)
        throw std::invalid_argument(
            "Case2Params: need 0 < D_min <= D_max, 0 < r_min <= r_max, 0 < beta <= 1");
}

namespace {

struct Cubic {
    double c3, c2, c1, c0;
    double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

struct TrigSolution {
    double theta;
    std::vector<double> roots;  // branch k = 0, 1, 2
    std::optional<double> double_root;
};

// Three-real-root trigonometric solution of c3 x^3 + c2 x^2 + c1 x + c0 with
// the depressed cubic t^3 + p t + q written as t = -m sin(y), m = 2 sqrt(-p/3),
// so that sin(3y) = theta = 3q / (p m).
TrigSolution trig_roots(const Cubic& c) {
    const double a = c.c2 / c.c3, b = c.c1 / c.c3, d = c.c0 / c.c3;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    if (!(p < 0)) throw BoundDisagreement("bound cubic does not have three real roots");
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double y = std::asin(theta) / 3.0;
    TrigSolution s{theta, {}, std::nullopt};
    for (int k = 0; k < 3; ++k)
        s.roots.push_back(-a / 3.0 - m * std::sin(y + 2.0 * std::numbers::pi * k / 3.0));
    // At |theta| = 1 branch 0 is a double root, which the sine form only
    // resolves to sqrt(eps). Its value -3q/(2p) is well conditioned. A theta
    // near 1 can also mean two roots that are merely close compared with the
    // third, so the candidate must actually be a root.
    const double candidate = -a / 3.0 - 3.0 * q / (2.0 * p);
    const double mag = std::abs(candidate);
    const double size = std::abs(c.c3) * mag * mag * mag + std::abs(c.c2) * mag * mag +
                        std::abs(c.c1) * mag + std::abs(c.c0);
    if (1.0 - std::abs(theta) < 1e-9 && std::abs(c(candidate)) <= 1e-12 * size) {
        s.double_root = candidate;
        s.roots[0] = *s.double_root;
        s.roots[theta > 0 ? 1 : 2] = *s.double_root;
        s.roots[theta > 0 ? 2 : 1] = -a / 3.0 + 3.0 * q / p;
    }
    return s;
}

// The k = 0 branch is the smallest positive root. Computing it directly
// subtracts two nearly equal terms when it is small, so it is recovered from
// the product of the roots instead, x0 = -d / (x1 x2), and then polished by
// Newton steps on the cubic itself.
double closed_form_small_root(const Cubic& c, const TrigSolution& s) {
    if (s.double_root) return *s.double_root;
    const double prod = s.roots[1] * s.roots[2];
    double x = prod == 0.0 ? s.roots[0] : -(c.c0 / c.c3) / prod;
    for (int it = 0; it < 12; ++it) {
        const double slope = (3.0 * c.c3 * x + 2.0 * c.c2) * x + c.c1;
        if (slope == 0.0) break;
        const double step = c(x) / slope;
        if (!std::isfinite(step)) break;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    return x;
}

// Smallest root of c in (0, upper], given c(0) > 0 and c(upper) <= 0. When
// c(upper) vanishes to rounding the sign test cannot be trusted there: a
// flat cubic touches zero at upper, and a rising one crossed zero earlier.
double bisect_root(const Cubic& c, double upper) {
    if (!(c(0.0) > 0)) throw BoundDisagreement("bound cubic: invalid bracket");
    const double scale = std::abs(c.c3) + std::abs(c.c2) + std::abs(c.c1) + std::abs(c.c0);
    double hi = upper;
    if (std::abs(c(hi)) <= 1e-14 * scale) {
        const double slope = (3.0 * c.c3 * hi + 2.0 * c.c2) * hi + c.c1;
        if (slope <= 1e-7 * scale) return hi;
        double shift = 1e-12 * upper;
        while (c(upper - shift) > 0 && shift < 1e-6 * upper) shift *= 10;
        hi = upper - shift;
    }
    if (c(hi) > 0) throw BoundDisagreement("bound cubic: invalid bracket");
    double lo = 0.0;
    for (int it = 0; it < 400 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (c(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CubicBoundResult solve_bound_cubic(const Cubic& c, double upper, double scale, const char* what) {
    const TrigSolution trig = trig_roots(c);
    CubicBoundResult out;
    out.theta = trig.theta;
    out.roots = trig.roots;
    std::sort(out.roots.begin(), out.roots.end());
    out.closed_form = closed_form_small_root(c, trig) / scale;
    out.omega = bisect_root(c, upper) / scale;
    out.agreement = std::abs(out.closed_form - out.omega);
    for (auto& r : out.roots) r /= scale;
    if (!(out.agreement <= kBoundAgreementTol * std::max(1.0, out.omega)))
        throw BoundDisagreement(std::string(what) + ": closed form " + std::to_string(out.closed_form) +
                                " disagrees with bisection " + std::to_string(out.omega));
    return out;
}

}  // namespace

double p_of_tau(const Case1Params& params, double tau) {
    const double dM = params.d_max, a = params.alpha();
    return ((dM * dM * dM * a * a * tau - dM * dM) * tau - dM) * tau + 1.0;
}

CubicBoundResult omega_case1(const Case1Params& params) {
    params.validate();
    // In s = d_max * tau: alpha^2 s^3 - s^2 - s + 1, with P(0) = 1 and
    // P(s = 1) = alpha^2 - 1 <= 0, so the wanted root is the only one in (0, 1].
    const double a = params.alpha();
    const Cubic c{a * a, -1.0, -1.0, 1.0};
    CubicBoundResult out = solve_bound_cubic(c, 1.0, params.d_max, "omega_case1");
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0 / params.d_max;
    if (out.omega < golden * (1 - 1e-12) || out.omega > (1.0 + 1e-12) / params.d_max)
        throw BoundDisagreement("omega_case1: result outside [(sqrt5-1)/2, 1]/d_max");
    return out;
}

double case2_numerator(const Case2Params& p, double x) {
    const Cubic c{p.r_max * p.beta * p.beta, -p.D_max * p.r_min, -p.D_max * p.D_max * p.r_max,
                  p.D_max * p.D_min * p.D_min * p.r_min};
    return c(x);
}

CubicBoundResult omega_case2(const Case2Params& p) {
    p.validate();
    // Numerator at 0 is D_max D_min^2 r_min > 0 and at D_min it is
    // r_max D_min (beta^2 D_min^2 - D_max^2) <= 0: one root in (0, D_min].
    // Dividing through by D_min keeps the bracket at (0, 1].
    const double s = p.D_min;
    const Cubic c{p.r_max * p.beta * p.beta * s * s * s, -p.D_max * p.r_min * s * s,
                  -p.D_max * p.D_max * p.r_max * s, p.D_max * p.D_min * p.D_min * p.r_min};
    CubicBoundResult out = solve_bound_cubic(c, 1.0, 1.0 / s, "omega_case2");
    if (out.omega > p.D_min)
        throw BoundDisagreement("omega_case2: bound exceeds the pitchfork threshold D_min");
    return out;
}

double omega_regular(int d) {
    if (d < 2) throw std::invalid_argument("omega_regular: need d >= 2");
    return 1.0 / (2.0 * std::sqrt(static_cast<double>(d - 1)));
}

RegimeLimit regime_limits(const Case2Params& base, Regime regime, const RampOptions& opts) {
    base.validate();
    if (opts.steps < 2 || !(opts.factor > 1))
        throw std::invalid_argument("regime_limits: need steps >= 2 and factor > 1");
    RegimeLimit out;
    for (int k = 0; k <= opts.steps; ++k) {
        Case2Params p = base;
        const double g = std::pow(opts.factor, k);
        double value = 0;
        switch (regime) {
            case Regime::LargeDMax: value = p.D_max = base.D_max * g; break;
            case Regime::LargeRMax: value = p.r_max = base.r_max * g; break;
            case Regime::SmallRMin: value = p.r_min = base.r_min / g; break;
        }
        const CubicBoundResult r = omega_case2(p);
        out.ramp.push_back({value, r.theta, r.omega});
    }
    const auto& last = out.ramp.back();
    const auto& prev = out.ramp[out.ramp.size() - 2];
    if (std::abs(last.theta - prev.theta) > opts.settle_tol ||
        std::abs(last.omega - prev.omega) > opts.settle_tol)
        throw ConvergenceError("regime_limits: ramp has not settled");
    out.theta_limit = last.theta;
    out.omega_limit = last.omega;
    return out;
}

}  // namespace glvnet
