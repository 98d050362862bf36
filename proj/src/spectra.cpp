#include "glvnet/spectra.hpp"

#include <stdexcept>

#include "glvnet/error.hpp"

namespace glvnet {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("SymmetricMatrix: matrix is not square");
    if (!entries_.allFinite()) throw std::invalid_argument("SymmetricMatrix: non-finite entry");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < entries_.cols(); ++j)
            if (entries_(i, j) != entries_(j, i))
                throw std::invalid_argument("SymmetricMatrix: matrix is not symmetric");
}

SymmetricMatrix SymmetricMatrix::identity(Eigen::Index order) {
    return SymmetricMatrix(Eigen::MatrixXd::Identity(order, order), Trusted{});
}

SymmetricMatrix SymmetricMatrix::from_upper(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("from_upper: matrix is not square");
    Eigen::MatrixXd full = m.triangularView<Eigen::Upper>();
    full.triangularView<Eigen::StrictlyLower>() = full.transpose();
    return SymmetricMatrix(std::move(full));
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch");
    return SymmetricMatrix(a.entries_ + b.entries_, SymmetricMatrix::Trusted{});
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
    return SymmetricMatrix(s * a.entries_, SymmetricMatrix::Trusted{});
}

Eigen::VectorXd SymmetricMatrix::off_diagonal_row_sums() const {
    Eigen::VectorXd r = entries_.cwiseAbs().rowwise().sum();
    r -= entries_.diagonal().cwiseAbs();
    return r;
}

Eigen::VectorXd solve_spd(const SymmetricMatrix& m, const Eigen::VectorXd& b) {
    if (b.size() != m.order()) throw std::invalid_argument("solve_spd: size mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(m.entries());
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("solve_spd: matrix is not positive definite");
    Eigen::VectorXd x = llt.solve(b);
    const double scale = b.cwiseAbs().maxCoeff();
    const double residual = (m.entries() * x - b).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * (scale > 0 ? scale : 1.0))
        throw ConvergenceError("solve_spd: residual " + std::to_string(residual) +
                               " exceeds tolerance (ill-conditioned system)");
    return x;
}

Spectrum eig_symmetric(const SymmetricMatrix& m) {
    if (m.order() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("eig_symmetric: QR iteration failed");
    return {solver.eigenvalues()};
}

EigenDecomposition eigen_decompose(const SymmetricMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries());
    if (solver.info() != Eigen::Success) throw ConvergenceError("eigen_decompose: QR iteration failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool gershgorin_all_negative(std::span<const double> centers, std::span<const double> radii) {
    if (centers.size() != radii.size())
        throw std::invalid_argument("gershgorin_all_negative: size mismatch");
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (radii[i] < 0) throw std::invalid_argument("gershgorin_all_negative: negative radius");
        if (!(centers[i] + radii[i] < 0)) return false;
    }
    return true;
}

bool gershgorin_all_negative(const SymmetricMatrix& m) {
    const Eigen::VectorXd c = m.entries().diagonal();
    const Eigen::VectorXd r = m.off_diagonal_row_sums();
    return gershgorin_all_negative(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())),
                                   std::span<const double>(r.data(), static_cast<std::size_t>(r.size())));
}

bool is_positive_definite(const SymmetricMatrix& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m.entries());
    return llt.info() == Eigen::Success;
}

bool is_negative_definite(const SymmetricMatrix& m) {
    return is_positive_definite(-m);
}

}  // namespace glvnet
