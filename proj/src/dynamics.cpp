#include "glvnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "glvnet/error.hpp"

namespace glvnet {

Eigen::VectorXd rhs(const InteractionSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.size()) throw std::invalid_argument("rhs: size mismatch");
    const Eigen::VectorXd rate = sys.growth() - sys.competition().entries() * x -
                                 sys.self_regulation().cwiseProduct(x);
    return x.cwiseProduct(rate);
}

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const InteractionSystem& sys;
    Eigen::VectorXd k1, k2, k3, k4, k5, k6, k7, tmp;

    explicit Stepper(const InteractionSystem& s) : sys(s) {}

    // Advances x by h given k1 = f(x); fills k7 = f(x_new) (FSAL).
    Eigen::VectorXd step(const Eigen::VectorXd& x, double h) {
        tmp = x + h * a21 * k1;
        k2 = rhs(sys, tmp);
        tmp = x + h * (a31 * k1 + a32 * k2);
        k3 = rhs(sys, tmp);
        tmp = x + h * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = rhs(sys, tmp);
        tmp = x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = rhs(sys, tmp);
        tmp = x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = rhs(sys, tmp);
        Eigen::VectorXd next = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(sys, next);
        return next;
    }

    Eigen::VectorXd error(double h) const {
        return h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    }
};

double initial_step(const Eigen::VectorXd& x, const Eigen::VectorXd& f, double rtol, double atol) {
    const double sx = (x.cwiseAbs().array() * rtol + atol).matrix().cwiseInverse().cwiseProduct(x).norm();
    const double sf = (x.cwiseAbs().array() * rtol + atol).matrix().cwiseInverse().cwiseProduct(f).norm();
    if (sx < 1e-5 || sf < 1e-5) return 1e-6;
    return std::min(0.01 * sx / sf, 1.0);
}

// Gershgorin bound on the spectral radius of the Jacobian of the right-hand
// side, J = diag(r + M x) + diag(x) M.
double jacobian_radius(const InteractionSystem& sys, const Eigen::VectorXd& t_rows,
                       const Eigen::VectorXd& x) {
    const Eigen::VectorXd& d = sys.self_regulation();
    const Eigen::VectorXd rate = sys.growth() - sys.competition().entries() * x - d.cwiseProduct(x);
    return ((rate - x.cwiseProduct(d)).cwiseAbs() + x.cwiseAbs().cwiseProduct(t_rows)).maxCoeff();
}

void clip(Eigen::VectorXd& x, double atol) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) < atol) x(i) = 0.0;
}

}  // namespace

Trajectory integrate(const InteractionSystem& sys, const Eigen::VectorXd& x0,
                     const IntegrateOptions& opts) {
    if (x0.size() != sys.size()) throw std::invalid_argument("integrate: size mismatch");
    if (!x0.allFinite() || x0.minCoeff() < 0)
        throw std::invalid_argument("integrate: x0 must be finite and non-negative");
    if (!(opts.rtol > 0) || !(opts.atol > 0) || !(opts.t_end > 0))
        throw std::invalid_argument("integrate: rtol, atol and t_end must be positive");

    Trajectory tr;
    Eigen::VectorXd x = x0;
    clip(x, opts.atol);
    double t = 0.0;
    Stepper st(sys);
    st.k1 = rhs(sys, x);
    tr.times.push_back(t);
    tr.states.push_back(x);

    const double threshold = 10.0 * opts.atol;
    // Keeping h rho below 2 stays well inside the real stability interval of
    // the method, so stiff modes decay instead of being held at the edge by
    // the error controller.
    const Eigen::VectorXd t_rows = sys.competition().entries().cwiseAbs().rowwise().sum();
    double h_stable = 2.0 / std::max(jacobian_radius(sys, t_rows, x), 1e-300);
    double h = std::min(initial_step(x, st.k1, opts.rtol, opts.atol), opts.t_end);
    double err_prev = 1e-4;

    while (t < opts.t_end) {
        if (opts.stop_on_convergence && st.k1.cwiseAbs().maxCoeff() < threshold) {
            tr.converged = true;
            tr.convergence_time = t;
            break;
        }
        if (tr.accepted_steps + tr.rejected_steps >= opts.max_steps)
            throw StepSizeUnderflow("integrate: step budget exhausted", t);
        h = std::min({h, h_stable, opts.t_end - t});
        if (h < opts.h_min) throw StepSizeUnderflow("integrate: step size underflow", t);

        Eigen::VectorXd next = st.step(x, h);
        const Eigen::VectorXd scale =
            (x.cwiseAbs().cwiseMax(next.cwiseAbs()).array() * opts.rtol + opts.atol).matrix();
        const double err = st.error(h).cwiseQuotient(scale).cwiseAbs().maxCoeff();
        const bool finite = next.allFinite() && std::isfinite(err);
        const bool negative = finite && next.minCoeff() < -opts.atol;

        if (finite && !negative && err <= 1.0) {
            t += h;
            clip(next, opts.atol);
            x = std::move(next);
            // FSAL derivative unless clipping changed the state
            st.k1 = (x.array() == 0.0).any() ? rhs(sys, x) : st.k7;
            ++tr.accepted_steps;
            h_stable = 2.0 / std::max(jacobian_radius(sys, t_rows, x), 1e-300);
            if (x.minCoeff() < 0) throw std::logic_error("integrate: state left the orthant");
            if (opts.record_every > 0 && tr.accepted_steps % opts.record_every == 0) {
                tr.times.push_back(t);
                tr.states.push_back(x);
            }
            // PI controller
            const double e = std::max(err, 1e-10);
            double factor = 0.9 * std::pow(e, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            factor = std::clamp(factor, 0.2, 5.0);
            h *= factor;
            err_prev = e;
        } else {
            ++tr.rejected_steps;
            const double factor =
                finite && !negative ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25;
            h *= factor;
        }
    }
    if (tr.times.back() != t) {
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    tr.final_state = x;
    return tr;
}

Eigen::VectorXd integrate_fixed_step(const InteractionSystem& sys, const Eigen::VectorXd& x0,
                                     double t_end, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("integrate_fixed_step: need steps > 0");
    const double h = t_end / static_cast<double>(steps);
    Stepper st(sys);
    Eigen::VectorXd x = x0;
    for (std::size_t i = 0; i < steps; ++i) {
        st.k1 = rhs(sys, x);
        x = st.step(x, h);
    }
    return x;
}

StabilityCheck verify_global_stability(const InteractionSystem& sys, std::size_t trials, Rng& rng,
                                       const StabilityOptions& opts) {
    if (trials == 0) throw std::invalid_argument("verify_global_stability: need trials > 0");
    const EquilibriumReport eq = equilibrium(sys);
    if (!eq.feasible)
        throw DomainError("verify_global_stability: equilibrium is not feasible");

    const std::uint64_t base = rng.next();
    const Eigen::Index n = sys.size();
    const double log_lo = std::log(opts.x0_low), log_hi = std::log(opts.x0_high);

    std::vector<Eigen::VectorXd> starts(trials), finals(trials);
    auto run = [&](std::size_t i) {
        Rng local = Rng::derive(base, i);
        Eigen::VectorXd x0(n);
        for (Eigen::Index k = 0; k < n; ++k) x0(k) = std::exp(local.uniform(log_lo, log_hi));
        IntegrateOptions io = opts.integrate;
        io.record_every = 0;
        starts[i] = x0;
        finals[i] = integrate(sys, x0, io).final_state;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(trials)));
    if (workers == 1) {
        for (std::size_t i = 0; i < trials; ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < trials; i += workers) run(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    StabilityCheck out;
    out.trials = trials;
    out.x_star = eq.x_star;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const double dist = (finals[i] - eq.x_star).cwiseAbs().maxCoeff();
        out.max_distance = std::max(out.max_distance, dist);
        if (dist <= opts.tolerance)
            ++ok;
        else
            out.failures.push_back({starts[i], finals[i], dist});
    }
    out.fraction = static_cast<double>(ok) / static_cast<double>(trials);
    return out;
}

}  // namespace glvnet
