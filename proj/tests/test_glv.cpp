#include "doctest.h"

#include <cmath>

#include "glvnet/bounds.hpp"
#include "glvnet/error.hpp"
#include "glvnet/glv.hpp"
#include "glvnet/graphs.hpp"
#include "glvnet/spectra.hpp"
#include "helpers.hpp"

using namespace glvnet;

namespace {

// Random system with Delta = ratio * D_min.
InteractionSystem random_system(Rng& rng, double ratio) {
    const int n = 3 + int(rng.below(25));
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    const double density = rng.uniform(0.1, 0.8);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < density) t(i, j) = t(j, i) = rng.uniform(0.1, 1.0);
    if (t.isZero()) t(0, 1) = t(1, 0) = 1.0;
    Eigen::VectorXd d(n), r(n);
    for (int i = 0; i < n; ++i) {
        d(i) = rng.uniform(1.0, 3.0);
        r(i) = rng.uniform(0.5, 2.0);
    }
    const double delta = t.rowwise().sum().maxCoeff();
    t *= ratio * d.minCoeff() / delta;
    return InteractionSystem(r, SymmetricMatrix(t), d);
}

}  // namespace

TEST_SUITE("glv") {

TEST_CASE("system validation") {
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(2);
    Eigen::MatrixXd t(2, 2);
    t << 0, 1, 1, 0;
    CHECK_NOTHROW(InteractionSystem(one, SymmetricMatrix(t), one));
    CHECK_THROWS_AS(InteractionSystem(-one, SymmetricMatrix(t), one), std::invalid_argument);
    CHECK_THROWS_AS(InteractionSystem(one, SymmetricMatrix(t), 0 * one), std::invalid_argument);
    CHECK_THROWS_AS(InteractionSystem(one, SymmetricMatrix(-t), one), std::invalid_argument);
    Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(InteractionSystem(one, SymmetricMatrix(diag), one), std::invalid_argument);
    CHECK_THROWS_AS(constant_competition(star(3), -0.1), std::invalid_argument);
}

TEST_CASE("constant competition parameters") {
    const auto tri = constant_competition(complete(3), 0.2);
    CHECK(tri.delta() == doctest::Approx(0.4));
    CHECK(tri.beta() == doctest::Approx(1.0));
    const auto s4 = constant_competition(star(4), 0.3);
    CHECK(s4.delta() == doctest::Approx(0.9));
    CHECK(s4.beta() == doctest::Approx(1.0 / 3));
    const auto c2 = s4.case2_params();
    CHECK(c2.D_min == 1);
    CHECK(c2.r_max == 1);
    CHECK(c2.beta == doctest::Approx(1.0 / 3));
    const auto zero = constant_competition(star(4), 0.0);
    CHECK(zero.interaction_matrix().entries() == -Eigen::MatrixXd::Identity(4, 4));
    CHECK(zero.beta() == 1.0);
}

TEST_CASE("constant competition recovers the adjacency matrix") {
    Rng rng(1);
    for (double tau : {0.3, 0.17, 1.0 / 3, 0.9}) {
        const auto g = testing::connected_gnp(10, 0.4, rng);
        const auto sys = constant_competition(g, tau);
        CHECK((sys.competition().entries() / tau) == g.adjacency_matrix());
    }
}

TEST_CASE("equilibrium closed forms") {
    SUBCASE("regular graphs") {
        Rng rng(3);
        const auto g = random_regular(4, 20, rng);
        for (double tau : {0.05, 0.1, 0.2}) {
            const auto eq = equilibrium(constant_competition(g, tau));
            for (int i = 0; i < 20; ++i) CHECK(eq.x_star(i) == doctest::Approx(1 / (tau * 4 + 1)).epsilon(1e-12));
            CHECK(eq.feasible);
            CHECK(eq.stable);
        }
    }
    SUBCASE("K_{1,2}") {
        auto hub = [](double t) { return (1 - 2 * t) / (1 - 2 * t * t); };
        auto leaf = [](double t) { return (1 - t) / (1 - 2 * t * t); };
        const auto eq = equilibrium(constant_competition(complete_bipartite(1, 2), 0.4));
        CHECK(eq.x_star(0) == doctest::Approx(hub(0.4)).epsilon(1e-12));
        CHECK(eq.x_star(1) == doctest::Approx(leaf(0.4)).epsilon(1e-12));
        CHECK(eq.x_star(0) == doctest::Approx(0.294).epsilon(1e-3));
        CHECK(eq.x_star(1) == doctest::Approx(0.882).epsilon(1e-3));
        CHECK(eq.feasible);
        const auto past = equilibrium(constant_competition(complete_bipartite(1, 2), 0.55));
        CHECK(past.x_star(0) == doctest::Approx(hub(0.55)).epsilon(1e-12));
        CHECK_FALSE(past.feasible);
        CHECK(past.min_component < 0);
        CHECK(past.stable);
    }
    SUBCASE("past the pitchfork") {
        try {
            equilibrium(constant_competition(complete_bipartite(2, 2), 0.6));
            FAIL("expected PastPitchfork");
        } catch (const PastPitchfork& e) {
            CHECK(e.lambda_max() == doctest::Approx(0.2).epsilon(1e-12));
        }
    }
}

TEST_CASE("equilibrium back-substitutes") {
    Rng rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const auto sys = random_system(rng, rng.uniform(0.1, 0.99));
        const auto eq = equilibrium(sys);
        const Eigen::VectorXd res = sys.interaction_matrix().entries() * eq.x_star + sys.growth();
        CHECK(res.lpNorm<Eigen::Infinity>() <= 1e-9);
        CHECK(eq.feasible == (eq.min_component > 0));
        CHECK(eq.stable == is_negative_definite(sys.interaction_matrix()));
    }
}

TEST_CASE("jacobian") {
    const auto zero = constant_competition(star(4), 0.0);
    CHECK(jacobian_at(zero, Eigen::VectorXd::Ones(4)) == -Eigen::MatrixXd::Identity(4, 4));
    const auto sys = constant_competition(star(4), 0.3);
    CHECK(jacobian_at(sys, Eigen::VectorXd::Ones(4)) == sys.interaction_matrix().entries());
    CHECK_THROWS_AS(jacobian_at(sys, Eigen::VectorXd::Zero(4)), std::invalid_argument);

    Rng rng(6);
    const int d = 3;
    const auto g = random_regular(d, 16, rng);
    const double tau = 0.2;
    const auto s = constant_competition(g, tau);
    const Eigen::MatrixXd j = jacobian_at(s, equilibrium(s).x_star);
    Eigen::VectorXd ev = j.eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size());
    const auto a = eig_symmetric(SymmetricMatrix(g.adjacency_matrix()));
    Eigen::VectorXd expected(16);
    for (int i = 0; i < 16; ++i) expected(i) = -(tau * a.eigenvalues(i) + 1) / (tau * d + 1);
    std::sort(expected.data(), expected.data() + 16);
    CHECK((ev - expected).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("jacobian at a stable feasible point has negative real spectrum") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const auto sys = random_system(rng, rng.uniform(0.1, 0.9));
        const auto eq = equilibrium(sys);
        if (!eq.feasible) continue;
        const Eigen::VectorXcd ev = jacobian_at(sys, eq.x_star).eigenvalues();
        CHECK(ev.imag().cwiseAbs().maxCoeff() < 1e-9);
        CHECK(ev.real().maxCoeff() < 0);
    }
}

TEST_CASE("neumann series") {
    const auto zero = constant_competition(star(4), 0.0);
    CHECK(equilibrium_neumann(zero, 1) == Eigen::VectorXd::Ones(4));
    CHECK(equilibrium_neumann(zero, 7) == Eigen::VectorXd::Ones(4));

    const Eigen::VectorXd tri = equilibrium_neumann(constant_competition(complete(3), 0.2), 60);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(tri(i) - 1 / 1.4) < 1e-10);

    const auto s4 = constant_competition(star(4), 0.2);
    CHECK((equilibrium_neumann(s4, 200) - equilibrium(s4).x_star).lpNorm<Eigen::Infinity>() < 1e-8);

    CHECK_THROWS_AS(equilibrium_neumann(constant_competition(complete(4), 0.5), 200), ConvergenceError);
    CHECK_THROWS_AS(equilibrium_neumann(s4, 0), std::invalid_argument);
}

TEST_CASE("neumann remainder shrinks at least geometrically") {
    Rng rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        const double ratio = rng.uniform(0.2, 0.9);
        const auto sys = random_system(rng, ratio);
        const Eigen::VectorXd x = equilibrium(sys).x_star;
        const double scale = (sys.growth().array() / sys.self_regulation().array()).maxCoeff();
        for (int k : {5, 10, 20, 40}) {
            const double err = (equilibrium_neumann(sys, k) - x).lpNorm<Eigen::Infinity>();
            CHECK(err <= std::pow(ratio, k) / (1 - ratio) * scale * (1 + 1e-9) + 1e-14);
        }
    }
}

TEST_CASE("walk bound") {
    CHECK(walk_bound_lower(star(4), 0.0) == 1.0);
    CHECK_THROWS_AS(walk_bound_lower(star(4), 1.0 / 3), std::domain_error);

    const auto s4 = star(4);
    CHECK(walk_bound_lower(s4, 0.1) <= equilibrium(constant_competition(s4, 0.1)).min_component);

    for (int d : {2, 3, 5}) {
        const auto g = d == 2 ? cycle(6) : complete(d + 1);
        for (int k = 1; k < 50; ++k) {
            const double tau = k / (50.0 * d);
            CHECK(walk_bound_lower(g, tau) <= 1 / (1 + tau * d) * (1 + 1e-12));
        }
    }
}

TEST_CASE("walk bound lies below every equilibrium component") {
    Rng rng(10);
    for (int rep = 0; rep < 50; ++rep) {
        const auto g = testing::connected_gnp(20, rng.uniform(0.1, 0.5), rng);
        const double tau = rng.uniform(0, 0.999) / g.d_max();
        const auto sys = constant_competition(g, tau);
        const double bound = walk_bound_lower(g, tau);
        CHECK(bound <= equilibrium(sys).min_component + 1e-12);
        CHECK(walk_bound_lower(sys) == doctest::Approx(bound).epsilon(1e-12));
    }
    for (int rep = 0; rep < 100; ++rep) {
        const auto sys = random_system(rng, rng.uniform(0.01, 0.999));
        CHECK(walk_bound_lower(sys) <= equilibrium(sys).min_component + 1e-12);
    }
}

TEST_CASE("system json round trip and restriction") {
    Rng rng(11);
    const auto sys = random_system(rng, 0.5);
    const auto back = system_from_json(to_json(sys));
    CHECK(back.growth() == sys.growth());
    CHECK(back.self_regulation() == sys.self_regulation());
    CHECK(back.competition().entries() == sys.competition().entries());
    CHECK_THROWS(system_from_json(nlohmann::json{{"r", {1.0}}}));

    const auto sub = sys.restricted({0, 2});
    CHECK(sub.size() == 2);
    CHECK(sub.competition()(0, 1) == sys.competition()(0, 2));
    CHECK(sub.growth()(1) == sys.growth()(2));
}

}  // TEST_SUITE
