#pragma once

#define EIGEN_DONT_PARALLELIZE
#include <Eigen/Dense>

namespace switchnet {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index  = Eigen::Index;

/// Relative tolerance used when checking that a matrix is symmetric.
inline constexpr double kSymmetryTol = 1e-9;

/// Absolute tolerance for feasibility checks throughout the library.
inline constexpr double kFeasibilityTol = 1e-7;

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
struct SymEig {
    Vector eigenvalues;
    Matrix eigenvectors;  ///< orthonormal columns, one per eigenvalue
};

/// Largest absolute entry; 0 for an empty matrix.
[[nodiscard]] double max_abs(const Matrix& m);

/// Full eigendecomposition of a symmetric matrix.
///
/// Throws std::invalid_argument when `m` is not square or deviates from
/// symmetry by more than kSymmetryTol relative to its largest entry.
[[nodiscard]] SymEig sym_eig(const Matrix& m);

/// Euclidean projection onto the positive semidefinite cone.
///
/// Negative eigenvalues are clamped to zero; a matrix that is already
/// positive semidefinite is returned unchanged.
[[nodiscard]] Matrix project_psd(const Matrix& m);

}  // namespace switchnet
