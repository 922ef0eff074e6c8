#include "switchnet/linalg.hpp"

#include <stdexcept>
#include <string>

namespace switchnet {

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

namespace {

void require_symmetric(const Matrix& m, const char* caller) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(caller) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const double scale = 1.0 + max_abs(m);
    const double asym = max_abs(m - m.transpose());
    if (asym > kSymmetryTol * scale)
        throw std::invalid_argument(std::string(caller) + ": matrix is not symmetric (max |M - M^T| = " +
                                    std::to_string(asym) + ")");
}

}  // namespace

SymEig sym_eig(const Matrix& m) {
    require_symmetric(m, "sym_eig");
    // Symmetrize first so round-off in the input cannot leak into the result.
    const Matrix s = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sym_eig: eigendecomposition failed to converge");
    return SymEig{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix project_psd(const Matrix& m) {
    const SymEig eig = sym_eig(m);
    if (eig.eigenvalues.size() == 0) return m;
    if (eig.eigenvalues.minCoeff() >= 0.0) return 0.5 * (m + m.transpose());
    const Vector clamped = eig.eigenvalues.cwiseMax(0.0);
    Matrix out = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.transpose();
    return 0.5 * (out + out.transpose());
}

}  // namespace switchnet
