#include "doctest.h"

#include <cmath>
#include <limits>

#include "glvnet/bifurcation.hpp"
#include "glvnet/bounds.hpp"
#include "glvnet/error.hpp"
#include "glvnet/glv.hpp"
#include "glvnet/graphs.hpp"
#include "helpers.hpp"

using namespace glvnet;

TEST_SUITE("bifurcation") {

TEST_CASE("pitchfork threshold") {
    for (std::size_t k = 3; k <= 20; ++k)
        CHECK(tau_pitch(star(k)) == doctest::Approx(1 / std::sqrt(double(k - 1))).epsilon(1e-12));
    CHECK(tau_pitch(complete_bipartite(2, 2)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tau_pitch(complete(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(tau_pitch(UndirectedGraph(3, {}))));
}

TEST_CASE("transcritical threshold") {
    const auto k12 = tau_trans(complete_bipartite(1, 2));
    REQUIRE(k12.has_value());
    CHECK(*k12 == doctest::Approx(0.5).epsilon(1e-9));
    const auto s4 = tau_trans(star(4));
    REQUIRE(s4.has_value());
    CHECK(*s4 == doctest::Approx(1.0 / 3).epsilon(1e-9));
    Rng rng(1);
    CHECK_FALSE(tau_trans(random_regular(3, 20, rng)).has_value());
    CHECK_FALSE(tau_trans(cycle(7)).has_value());
}

TEST_CASE("classification examples") {
    const auto k22 = classify(complete_bipartite(2, 2));
    CHECK(k22.kind == BifurcationKind::Pitchfork);
    CHECK_FALSE(k22.tau_trans.has_value());
    CHECK_FALSE(k22.vanishing_vertex.has_value());
    CHECK(k22.tau_pitch == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(k22.tau_c == k22.tau_pitch);

    const auto s4 = classify(star(4));
    CHECK(s4.kind == BifurcationKind::Transcritical);
    CHECK(s4.tau_c == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(s4.tau_pitch == doctest::Approx(0.5774).epsilon(1e-4));
    REQUIRE(s4.vanishing_vertex.has_value());
    CHECK(*s4.vanishing_vertex == 0);

    const auto k2 = classify(complete(2));
    CHECK(k2.kind == BifurcationKind::Pitchfork);
    CHECK(k2.tau_c == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(classify(star(3)).kind == BifurcationKind::Transcritical);
    CHECK_THROWS_AS(classify(UndirectedGraph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
    CHECK(std::string(to_string(BifurcationKind::Pitchfork)) == "Pitchfork");
}

TEST_CASE("balanced complete bipartite graphs meet the bound") {
    for (std::size_t n = 2; n <= 10; ++n) {
        const auto r = classify(complete_bipartite(n, n));
        const double omega = omega_case1({int(n), int(n)}).omega;
        CHECK(std::abs(r.tau_c - 1.0 / double(n)) <= 1e-9);
        CHECK(std::abs(r.tau_c - omega) <= 1e-9);
    }
}

TEST_CASE("report invariants on random graphs") {
    Rng rng(21);
    for (int rep = 0; rep < 60; ++rep) {
        const auto g = testing::connected_gnp(6 + rng.below(25), rng.uniform(0.1, 0.6), rng);
        if (g.d_max() < 2) continue;
        const auto r = classify(g);
        const double trans = r.tau_trans.value_or(std::numeric_limits<double>::infinity());
        CHECK(r.tau_c == std::min(trans, r.tau_pitch));
        CHECK((r.kind == BifurcationKind::Transcritical) == (trans < r.tau_pitch));
        CHECK(r.vanishing_vertex.has_value() == (r.kind == BifurcationKind::Transcritical));
        CHECK(r.tau_c >= omega_case1({g.d_min(), g.d_max()}).omega * (1 - 1e-12));
        if (testing::triangle_free(g)) CHECK(r.tau_pitch <= 1 / std::sqrt(g.d_max() - 1.0) * (1 + 1e-12));

        if (r.tau_trans) {
            const InteriorEquilibriumCurve curve(g);
            const double eps = 1e-6 * r.tau_pitch;
            CHECK(std::abs(curve.min_component(*r.tau_trans)) <= 1e-9);
            CHECK(equilibrium(constant_competition(g, *r.tau_trans - eps)).feasible);
            if (*r.tau_trans + eps < r.tau_pitch)
                CHECK_FALSE(equilibrium(constant_competition(g, *r.tau_trans + eps)).feasible);
            // Automorphic vertices can tie, so compare values, not indices.
            const Eigen::VectorXd x = curve.at(*r.tau_trans);
            CHECK(x(Eigen::Index(*r.vanishing_vertex)) <= x.minCoeff() + 1e-9);
        }
    }
}

TEST_CASE("equilibrium curve matches the direct solve") {
    Rng rng(22);
    const auto g = testing::connected_gnp(15, 0.3, rng);
    const InteriorEquilibriumCurve curve(g);
    for (double f : {0.0, 0.3, 0.7, 0.95}) {
        const double tau = f * tau_pitch(g);
        CHECK((curve.at(tau) - equilibrium(constant_competition(g, tau)).x_star).lpNorm<Eigen::Infinity>() < 1e-9);
    }
}

TEST_CASE("classification is invariant under relabeling") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = testing::connected_gnp(12, rng.uniform(0.2, 0.6), rng);
        const auto perm = testing::random_permutation(12, rng);
        const auto a = classify(g), b = classify(g.relabeled(perm));
        CHECK(a.kind == b.kind);
        CHECK(a.tau_pitch == doctest::Approx(b.tau_pitch).epsilon(1e-12));
        CHECK(a.tau_c == doctest::Approx(b.tau_c).epsilon(1e-8));
        if (a.vanishing_vertex && b.vanishing_vertex) CHECK(perm[*a.vanishing_vertex] == *b.vanishing_vertex);
    }
}

TEST_CASE("branch samples") {
    Rng rng(24);
    const auto g = random_regular(4, 12, rng);
    const auto reg = branch(g, {0.0, 0.1, 0.2});
    REQUIRE(reg.size() == 3);
    for (const auto& s : reg) {
        for (Eigen::Index i = 0; i < 12; ++i) CHECK(s.x_star(i) == doctest::Approx(1 / (1 + 4 * s.tau)).epsilon(1e-12));
        CHECK(s.feasible);
        CHECK(s.stable);
    }

    const auto k12 = branch(complete_bipartite(1, 2), {0.49});
    CHECK(k12[0].x_star.minCoeff() == doctest::Approx((1 - 0.98) / (1 - 2 * 0.49 * 0.49)).epsilon(1e-12));
    CHECK(k12[0].x_star.minCoeff() == doctest::Approx(0.0385).epsilon(1e-2));
    CHECK(k12[0].feasible);

    // Past the transcritical point the hub is gone and the leaves are
    // decoupled logistic species.
    const auto s4 = branch(star(4), {0.2, 0.4, 0.5, 0.7});
    CHECK(s4[0].feasible);
    for (std::size_t i = 1; i < s4.size(); ++i) {
        CHECK_FALSE(s4[i].feasible);
        CHECK(s4[i].stable);
        CHECK(s4[i].x_star(0) == 0.0);
        for (Eigen::Index v = 1; v < 4; ++v) CHECK(s4[i].x_star(v) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(branch(star(4), {0.3, 0.2}), std::invalid_argument);
}

TEST_CASE("saturated equilibrium is non-invadable") {
    Rng rng(25);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = testing::connected_gnp(12, 0.3, rng);
        const double tau = rng.uniform(0.5, 1.0) * tau_pitch(g);
        const auto sys = constant_competition(g, tau);
        const auto st = saturated_equilibrium(sys);
        if (!st.stable) continue;
        const Eigen::VectorXd growth = sys.growth() + sys.interaction_matrix().entries() * st.x;
        for (Eigen::Index i = 0; i < sys.size(); ++i) {
            CHECK(st.x(i) >= 0);
            if (st.x(i) > 0) CHECK(std::abs(growth(i)) < 1e-9);
            else CHECK(growth(i) <= 1e-9);
        }
    }
}

TEST_CASE("fig2 pair search") {
    Rng a(3), b(3);
    const auto pair = find_fig2_pair(8, a);
    CHECK(pair.graph.order() == 8);
    CHECK(pair.graph.has_edge(pair.removed.first, pair.removed.second));
    CHECK(pair.reduced == pair.graph.without_edge(pair.removed.first, pair.removed.second));
    CHECK(pair.reduced.is_connected());
    CHECK(pair.graph_report.kind != pair.reduced_report.kind);
    CHECK(classify(pair.graph).kind == pair.graph_report.kind);
    CHECK(classify(pair.reduced).kind == pair.reduced_report.kind);

    const auto again = find_fig2_pair(8, b);
    CHECK(again.graph == pair.graph);
    CHECK(again.removed == pair.removed);

    Rng c(4);
    Fig2SearchOptions tiny;
    tiny.budget = 0;
    CHECK_THROWS_AS(find_fig2_pair(8, c, tiny), ResampleCapExceeded);
    CHECK_THROWS_AS(find_fig2_pair(3, c), std::invalid_argument);
}

}  // TEST_SUITE
