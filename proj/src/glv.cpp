#include "glvnet/glv.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <stdexcept>

#include "glvnet/bounds.hpp"
#include "glvnet/error.hpp"

namespace glvnet {

InteractionSystem::InteractionSystem(Eigen::VectorXd r, SymmetricMatrix t, Eigen::VectorXd d)
    : r_(std::move(r)), t_(std::move(t)), d_(std::move(d)) {
    const Eigen::Index n = r_.size();
    if (n == 0) throw std::invalid_argument("InteractionSystem: empty system");
    if (t_.order() != n || d_.size() != n)
        throw std::invalid_argument("InteractionSystem: dimension mismatch");
    if (!r_.allFinite() || r_.minCoeff() <= 0)
        throw std::invalid_argument("InteractionSystem: growth rates must be positive");
    if (!d_.allFinite() || d_.minCoeff() <= 0)
        throw std::invalid_argument("InteractionSystem: self-regulation must be positive");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (t_(i, i) != 0.0) throw std::invalid_argument("InteractionSystem: T must have zero diagonal");
        for (Eigen::Index j = 0; j < n; ++j)
            if (t_(i, j) < 0) throw std::invalid_argument("InteractionSystem: T must be non-negative");
    }
}

SymmetricMatrix InteractionSystem::interaction_matrix() const {
    return -regularised_competition();
}

SymmetricMatrix InteractionSystem::regularised_competition() const {
    Eigen::MatrixXd m = t_.entries();
    m.diagonal() += d_;
    return SymmetricMatrix(std::move(m));
}

Eigen::VectorXd InteractionSystem::row_sums() const {
    return t_.entries().rowwise().sum();
}

double InteractionSystem::delta() const {
    return row_sums().maxCoeff();
}

double InteractionSystem::beta() const {
    const Eigen::VectorXd s = row_sums();
    const double hi = s.maxCoeff();
    return hi > 0 ? s.minCoeff() / hi : 1.0;
}

Case2Params InteractionSystem::case2_params() const {
    return Case2Params{d_min(), d_max(), r_min(), r_max(), beta()};
}

InteractionSystem InteractionSystem::restricted(const std::vector<Eigen::Index>& species) const {
    const auto k = static_cast<Eigen::Index>(species.size());
    Eigen::VectorXd r(k), d(k);
    Eigen::MatrixXd t(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        r(a) = r_(species[a]);
        d(a) = d_(species[a]);
        for (Eigen::Index b = 0; b < k; ++b) t(a, b) = t_(species[a], species[b]);
    }
    return InteractionSystem(std::move(r), SymmetricMatrix(std::move(t)), std::move(d));
}

InteractionSystem constant_competition(const UndirectedGraph& g, double tau) {
    if (!(tau >= 0) || !std::isfinite(tau))
        throw std::invalid_argument("constant_competition: tau must be non-negative");
    const auto n = static_cast<Eigen::Index>(g.order());
    return InteractionSystem(Eigen::VectorXd::Ones(n), SymmetricMatrix(tau * g.adjacency_matrix()),
                             Eigen::VectorXd::Ones(n));
}

EquilibriumReport equilibrium(const InteractionSystem& sys) {
    const SymmetricMatrix k = sys.regularised_competition();
    Eigen::VectorXd x;
    try {
        x = solve_spd(k, sys.growth());
    } catch (const NotPositiveDefinite&) {
        const double lambda_max = eig_symmetric(sys.interaction_matrix()).max();
        throw PastPitchfork("equilibrium: M is not negative definite (past the pitchfork)",
                            lambda_max);
    }
    EquilibriumReport rep;
    rep.min_component = x.minCoeff();
    rep.feasible = rep.min_component > 0;
    rep.stable = true;  // T + D factorised, so M is negative definite
    rep.x_star = std::move(x);
    return rep;
}

Eigen::MatrixXd jacobian_at(const InteractionSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.size()) throw std::invalid_argument("jacobian_at: size mismatch");
    if (x.minCoeff() <= 0) throw std::invalid_argument("jacobian_at: x must be strictly positive");
    return x.asDiagonal() * sys.interaction_matrix().entries();
}

Eigen::VectorXd equilibrium_neumann(const InteractionSystem& sys, int terms) {
    if (terms < 1) throw std::invalid_argument("equilibrium_neumann: need at least one term");
    const Eigen::VectorXd dinv = sys.self_regulation().cwiseInverse();
    const Eigen::MatrixXd k = dinv.asDiagonal() * sys.competition().entries();
    Eigen::VectorXd term = dinv.cwiseProduct(sys.growth());
    Eigen::VectorXd sum = term;
    const double first = term.cwiseAbs().maxCoeff();
    std::vector<double> sizes{first};
    for (int i = 1; i < terms; ++i) {
        term = -(k * term);
        sum += term;
        const double size = term.cwiseAbs().maxCoeff();
        if (!std::isfinite(size) || size > 1e12 * first)
            throw ConvergenceError("equilibrium_neumann: series diverges (spectral radius of D^-1 T >= 1)");
        sizes.push_back(size);
        if (size == 0.0) break;
    }
    // Average contraction over the tail; >= 1 means the partial sums are not
    // settling.
    const std::size_t span = std::min<std::size_t>(10, sizes.size() - 1);
    if (span >= 5 && sizes.back() > 0.0) {
        const double ratio = std::pow(sizes.back() / sizes[sizes.size() - 1 - span], 1.0 / span);
        if (ratio >= 1.0)
            throw ConvergenceError("equilibrium_neumann: terms not contracting (spectral radius of D^-1 T >= 1)");
    }
    return sum;
}

double walk_bound_lower(const UndirectedGraph& g, double tau) {
    const double dm = g.d_min(), dM = g.d_max();
    if (tau < 0) throw std::invalid_argument("walk_bound_lower: tau must be non-negative");
    if (!(tau * dM < 1.0))
        throw std::domain_error("walk_bound_lower: requires tau * d_max < 1 (pole at 1/d_max)");
    const double num = 1 - dM * tau - dM * dM * tau * tau + dm * dm * dM * tau * tau * tau;
    const double den = (dm * dm * tau * tau - 1) * (dM * dM * tau * tau - 1);
    return num / den;
}

double walk_bound_lower(const InteractionSystem& sys) {
    const double delta = sys.delta(), beta = sys.beta();
    const double dmin = sys.d_min(), dmax = sys.d_max();
    const double rmin = sys.r_min(), rmax = sys.r_max();
    if (!(delta < dmin)) throw std::domain_error("walk_bound_lower: requires delta < D_min");
    const double num = dmax * dmin * dmin * rmin - dmax * rmin * delta * delta -
                       dmax * dmax * rmax * delta + rmax * beta * beta * delta * delta * delta;
    const double den = (dmax * dmax - beta * beta * delta * delta) * (dmin * dmin - delta * delta);
    return num / den;
}

nlohmann::json to_json(const InteractionSystem& sys) {
    nlohmann::json j;
    j["r"] = std::vector<double>(sys.growth().begin(), sys.growth().end());
    j["D"] = std::vector<double>(sys.self_regulation().begin(), sys.self_regulation().end());
    nlohmann::json t = nlohmann::json::array();
    const auto& m = sys.competition();
    for (Eigen::Index i = 0; i < sys.size(); ++i)
        for (Eigen::Index j2 = i + 1; j2 < sys.size(); ++j2)
            if (m(i, j2) != 0.0) t.push_back({i, j2, m(i, j2)});
    j["T"] = std::move(t);
    return j;
}

InteractionSystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("r") || !j.contains("D"))
        throw std::invalid_argument("system JSON needs \"r\" and \"D\" arrays");
    const auto r = j.at("r").get<std::vector<double>>();
    const auto d = j.at("D").get<std::vector<double>>();
    const auto n = static_cast<Eigen::Index>(r.size());
    if (static_cast<Eigen::Index>(d.size()) != n)
        throw std::invalid_argument("system JSON: r and D lengths differ");
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    if (j.contains("T")) {
        for (const auto& entry : j.at("T")) {
            if (!entry.is_array() || entry.size() != 3)
                throw std::invalid_argument("system JSON: T entries must be [i, j, w]");
            const auto a = entry[0].get<long long>(), b = entry[1].get<long long>();
            const double w = entry[2].get<double>();
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw std::invalid_argument("system JSON: T index out of range");
            if (a == b) throw std::invalid_argument("system JSON: T must have zero diagonal");
            if (t(a, b) != 0.0) throw std::invalid_argument("system JSON: duplicate T entry");
            t(a, b) = t(b, a) = w;
        }
    }
    return InteractionSystem(Eigen::Map<const Eigen::VectorXd>(r.data(), n),
                             SymmetricMatrix(std::move(t)),
                             Eigen::Map<const Eigen::VectorXd>(d.data(), n));
}

}  // namespace glvnet
