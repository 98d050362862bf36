#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glvnet/error.hpp"
#include "glvnet/graphs.hpp"
#include "glvnet/spectra.hpp"
#include "helpers.hpp"

using namespace glvnet;

namespace {

// Real roots of det(lambda I - m) for symmetric 3x3 m, from the
// characteristic cubic via the trigonometric formula.
std::vector<double> char_cubic_roots(const Eigen::Matrix3d& m) {
    const double tr = m.trace();
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double det = m.determinant();
    // lambda^3 - tr lambda^2 + minors lambda - det.
    const double a = -tr, b = minors, c = -det;
    const double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
    std::vector<double> roots;
    if (p >= 0) {
        roots.assign(3, -a / 3 + std::cbrt(-q));
    } else {
        const double r = 2 * std::sqrt(-p / 3);
        const double arg = std::clamp(3 * q / (p * r), -1.0, 1.0);
        if (1 - std::abs(arg) < 1e-10) {
            // Repeated root: arccos is ill-conditioned here, use the exact pair.
            const double twice = -3 * q / (2 * p), once = 3 * q / p;
            roots = {-a / 3 + twice, -a / 3 + twice, -a / 3 + once};
            std::sort(roots.begin(), roots.end());
            return roots;
        }
        const double phi = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k) roots.push_back(-a / 3 + r * std::cos(phi - 2 * std::numbers::pi * k / 3));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

SymmetricMatrix adjacency(const UndirectedGraph& g) { return SymmetricMatrix(g.adjacency_matrix()); }

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("symmetric matrix construction") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 2.0000001, 1;
    CHECK_THROWS_AS(SymmetricMatrix{m}, std::invalid_argument);
    CHECK_THROWS_AS(SymmetricMatrix{Eigen::MatrixXd(2, 3)}, std::invalid_argument);
    Eigen::MatrixXd u(2, 2);
    u << 1, 2, 99, 3;
    CHECK(SymmetricMatrix::from_upper(u)(1, 0) == 2);
    CHECK(SymmetricMatrix::identity(3).entries() == Eigen::MatrixXd::Identity(3, 3));
}

TEST_CASE("solve_spd") {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    CHECK(solve_spd(SymmetricMatrix::identity(3), ones).isApprox(ones));

    Eigen::MatrixXd m(2, 2);
    m << 1, 0.5, 0.5, 1;
    const Eigen::VectorXd x = solve_spd(SymmetricMatrix(m), Eigen::VectorXd::Ones(2));
    CHECK(x(0) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(x(1) == doctest::Approx(2.0 / 3).epsilon(1e-14));

    const auto tri = 0.2 * adjacency(complete(3)) + SymmetricMatrix::identity(3);
    const Eigen::VectorXd y = solve_spd(tri, ones);
    for (int i = 0; i < 3; ++i) CHECK(y(i) == doctest::Approx(1 / 1.4).epsilon(1e-14));

    const auto indefinite = 0.6 * adjacency(complete_bipartite(2, 2)) + SymmetricMatrix::identity(4);
    CHECK_THROWS_AS(solve_spd(indefinite, Eigen::VectorXd::Ones(4)), NotPositiveDefinite);
}

TEST_CASE("solve_spd residual on random SPD systems") {
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 5 + int(rng.below(30));
        Eigen::MatrixXd b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = rng.uniform(-1, 1);
        Eigen::MatrixXd a = b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
        a = 0.5 * (a + a.transpose()).eval();
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) rhs(i) = rng.uniform(-1, 1);
        const Eigen::VectorXd x = solve_spd(SymmetricMatrix(a), rhs);
        CHECK((a * x - rhs).lpNorm<Eigen::Infinity>() <= 1e-10 * rhs.lpNorm<Eigen::Infinity>());
    }
}

TEST_CASE("known spectra") {
    const auto s4 = eig_symmetric(adjacency(star(4)));
    const double r3 = std::sqrt(3.0);
    CHECK(s4.eigenvalues(0) == doctest::Approx(-r3).epsilon(1e-12));
    CHECK(std::abs(s4.eigenvalues(1)) < 1e-12);
    CHECK(std::abs(s4.eigenvalues(2)) < 1e-12);
    CHECK(s4.eigenvalues(3) == doctest::Approx(r3).epsilon(1e-12));

    const auto k22 = eig_symmetric(adjacency(complete_bipartite(2, 2)));
    CHECK(k22.min() == doctest::Approx(-2).epsilon(1e-12));
    CHECK(k22.max() == doctest::Approx(2).epsilon(1e-12));

    const auto id = eig_symmetric(SymmetricMatrix::identity(4));
    CHECK(id.eigenvalues.isApprox(Eigen::VectorXd::Ones(4)));
}

TEST_CASE("3x3 eigenvalues match the characteristic cubic on a grid") {
    const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    std::size_t cases = 0;
    for (double a : grid)
        for (double b : grid)
            for (double c : grid)
                for (double d : grid)
                    for (double e : grid)
                        for (double f : grid) {
                            Eigen::Matrix3d m;
                            m << a, d, e, d, b, f, e, f, c;
                            const auto spec = eig_symmetric(SymmetricMatrix(Eigen::MatrixXd(m)));
                            const auto roots = char_cubic_roots(m);
                            for (int i = 0; i < 3; ++i)
                                REQUIRE(std::abs(spec.eigenvalues(i) - roots[std::size_t(i)]) < 1e-8);
                            ++cases;
                        }
    CHECK(cases == 15625);
}

TEST_CASE("spectral shift of -(tau A + I)") {
    Rng rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        const auto g = testing::connected_gnp(20, 0.25, rng);
        const double tau = rng.uniform(0, 1);
        const auto a = eig_symmetric(adjacency(g));
        const auto m = eig_symmetric(-(tau * adjacency(g) + SymmetricMatrix::identity(20)));
        // Negation reverses the order.
        for (int i = 0; i < 20; ++i)
            CHECK(std::abs(m.eigenvalues(19 - i) + (tau * a.eigenvalues(i) + 1)) < 1e-9);
    }
}

TEST_CASE("gershgorin test") {
    std::vector<double> centers(5, -1.0), radii{0.8, 0.6, 0.4, 0.2, 0.8};
    CHECK(gershgorin_all_negative(centers, radii));
    std::vector<double> c2{-1.0, -2.0}, r2{1.5, 0.5};
    CHECK_FALSE(gershgorin_all_negative(c2, r2));
    std::vector<double> zeros(2, 0.0);
    CHECK(gershgorin_all_negative(c2, zeros));
    std::vector<double> neg{-0.1, 0.0};
    CHECK_THROWS_AS(gershgorin_all_negative(c2, neg), std::invalid_argument);
}

TEST_CASE("gershgorin implies negative definite") {
    Rng rng(12);
    for (int rep = 0; rep < 50; ++rep) {
        const auto g = testing::connected_gnp(15, rng.uniform(0.1, 0.6), rng);
        const double tau = rng.uniform(0, 1.5) / g.d_max();
        const auto m = -(tau * adjacency(g) + SymmetricMatrix::identity(15));
        if (tau * g.d_max() < 1) CHECK(gershgorin_all_negative(m));
        if (gershgorin_all_negative(m)) CHECK(is_negative_definite(m));
    }
}

TEST_CASE("definiteness") {
    const auto a = adjacency(complete_bipartite(2, 2));
    const auto id = SymmetricMatrix::identity(4);
    CHECK(is_negative_definite(-(0.4 * a + id)));
    CHECK_FALSE(is_negative_definite(-(0.6 * a + id)));
    CHECK(is_negative_definite(-id));
    CHECK(is_positive_definite(id));
    CHECK_FALSE(is_positive_definite(-id));
}

}  // TEST_SUITE
