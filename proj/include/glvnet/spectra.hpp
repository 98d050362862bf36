#pragma once

#include <span>

#include <Eigen/Dense>

namespace glvnet {

/// Dense real symmetric matrix. Symmetry is exact: construction rejects any
/// asymmetric input, so entries(i,j) == entries(j,i) bit for bit.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(Eigen::MatrixXd entries);

    static SymmetricMatrix identity(Eigen::Index order);
    /// Mirrors the upper triangle onto the lower one.
    static SymmetricMatrix from_upper(const Eigen::MatrixXd& m);

    Eigen::Index order() const noexcept { return entries_.rows(); }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    SymmetricMatrix operator-() const { return SymmetricMatrix(-entries_, Trusted{}); }
    friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
    friend SymmetricMatrix operator*(double s, const SymmetricMatrix& a);

    /// Off-diagonal absolute row sums (Gershgorin radii).
    Eigen::VectorXd off_diagonal_row_sums() const;

private:
    struct Trusted {};
    SymmetricMatrix(Eigen::MatrixXd entries, Trusted) : entries_(std::move(entries)) {}
    Eigen::MatrixXd entries_;
};

/// Eigenvalues in ascending order.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    double min() const { return eigenvalues(0); }
    double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Spectrum plus orthonormal eigenvectors (columns, same order).
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Cholesky solve of m*x = b. Throws NotPositiveDefinite on a non-positive
/// pivot and ConvergenceError if the residual exceeds 1e-10*|b|_inf.
Eigen::VectorXd solve_spd(const SymmetricMatrix& m, const Eigen::VectorXd& b);

Spectrum eig_symmetric(const SymmetricMatrix& m);
EigenDecomposition eigen_decompose(const SymmetricMatrix& m);

/// True iff every disk centre + radius lies strictly left of 0.
bool gershgorin_all_negative(std::span<const double> centers, std::span<const double> radii);
/// Same test with centres and radii read off the matrix.
bool gershgorin_all_negative(const SymmetricMatrix& m);

/// lambda_max(m) < 0, decided by factorising -m.
bool is_negative_definite(const SymmetricMatrix& m);
bool is_positive_definite(const SymmetricMatrix& m);

}  // namespace glvnet
