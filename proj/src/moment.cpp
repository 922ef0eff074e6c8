#include "switchnet/moment.hpp"

#include <cmath>
#include <stdexcept>

#include "switchnet/parallel.hpp"

namespace switchnet {

Matrix MomentBlock::bordered() const {
    const Index M = lambda.size();
    Matrix b(M + 1, M + 1);
    b(0, 0) = 1.0;
    b.block(0, 1, 1, M) = lambda.transpose();
    b.block(1, 0, M, 1) = lambda;
    b.block(1, 1, M, M) = Lambda;
    return b;
}

MomentBlock MomentBlock::vertex(Index mode_count, Index mode) {
    MomentBlock blk;
    blk.lambda = Vector::Zero(mode_count);
    blk.lambda(mode) = 1.0;
    blk.Lambda = Matrix::Zero(mode_count, mode_count);
    blk.Lambda(mode, mode) = 1.0;
    return blk;
}

Index ModeBlockResult::hardened() const {
    Index best = 0;
    for (Index j = 1; j < block.lambda.size(); ++j)
        if (block.lambda(j) > block.lambda(best)) best = j;
    return best;
}

Index best_column_by_l1(const Matrix& residuals) {
    Index best = 0;
    double best_norm = residuals.col(0).lpNorm<1>();
    for (Index j = 1; j < residuals.cols(); ++j) {
        const double norm = residuals.col(j).lpNorm<1>();
        if (norm < best_norm) {
            best_norm = norm;
            best = j;
        }
    }
    return best;
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Scaled vectorization of the upper triangle (row-major over i <= j) with
// off-diagonal entries multiplied by sqrt(2), so that inner products of
// packed vectors equal Frobenius inner products of the matrices.
void svec(const Matrix& x, double* out) {
    const Index n = x.rows();
    Index k = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) out[k++] = i == j ? x(i, j) : kSqrt2 * x(i, j);
}

Matrix smat(const double* s, Index n) {
    Matrix x(n, n);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            const double v = i == j ? s[k] : s[k] / kSqrt2;
            x(i, j) = v;
            x(j, i) = v;
            ++k;
        }
    return x;
}

}  // namespace

ModeBlockResult solve_mode_block(const Matrix& residuals, const ModeBlockOptions& opts) {
    const Index K = residuals.rows();
    const Index M = residuals.cols();
    if (K == 0 || M == 0)
        throw std::invalid_argument("solve_mode_block: residual matrix must be non-empty");
    if (!residuals.allFinite())
        throw std::invalid_argument("solve_mode_block: residual matrix has non-finite entries");

    // Scaling the residuals leaves the optimal lambda unchanged and keeps the
    // splitting iteration well conditioned for large raw fit errors.
    const double scale = max_abs(residuals);
    const Matrix R = scale > 0.0 ? Matrix(residuals / scale) : Matrix::Zero(K, M);

    const Index n1 = M + 1;             // bordered matrix size
    const Index d1 = n1 * (n1 + 1) / 2; // packed symmetric length
    const Index dim = d1 + 2 * K;       // packed matrix + slack pair (u, v)

    // Packed index of entry (i, j), i <= j, in the row-major upper triangle.
    auto pos = [n1](Index i, Index j) { return i * n1 - i * (i - 1) / 2 + (j - i); };

    // Affine constraints A z = b over z = (svec(X), u, v):
    //   X_00 = 1,  X_jj - X_0j = 0,  sum_j X_0j = 1,  R lambda - u + v = 0.
    const Index rows = 1 + M + 1 + K;
    Matrix A = Matrix::Zero(rows, dim);
    Vector b = Vector::Zero(rows);
    A(0, pos(0, 0)) = 1.0;
    b(0) = 1.0;
    for (Index j = 1; j <= M; ++j) {
        A(j, pos(j, j)) = 1.0;
        A(j, pos(0, j)) = -1.0 / kSqrt2;
    }
    for (Index j = 1; j <= M; ++j) A(M + 1, pos(0, j)) = 1.0 / kSqrt2;
    b(M + 1) = 1.0;
    for (Index k = 0; k < K; ++k) {
        for (Index j = 1; j <= M; ++j) A(M + 2 + k, pos(0, j)) = R(k, j - 1) / kSqrt2;
        A(M + 2 + k, d1 + k) = -1.0;
        A(M + 2 + k, d1 + K + k) = 1.0;
    }

    const Eigen::LDLT<Matrix> normal(A * A.transpose());
    const auto project_affine = [&](const Vector& y) -> Vector {
        return y - A.transpose() * normal.solve(A * y - b);
    };

    Vector cost = Vector::Zero(dim);
    cost.segment(d1, 2 * K).setConstant(1.0);

    // Feasible symmetric start: uniform lambda with its exact moment matrix.
    const Vector lambda0 = Vector::Constant(M, 1.0 / static_cast<double>(M));
    Matrix x0 = Matrix::Zero(n1, n1);
    x0(0, 0) = 1.0;
    x0.block(0, 1, 1, M) = lambda0.transpose();
    x0.block(1, 0, M, 1) = lambda0;
    x0.block(1, 1, M, M) = Matrix(lambda0.asDiagonal());
    Vector z(dim);
    svec(x0, z.data());
    const Vector r0 = R * lambda0;
    z.segment(d1, K) = r0.cwiseMax(0.0);
    z.segment(d1 + K, K) = (-r0).cwiseMax(0.0);
    Vector w = Vector::Zero(dim);

    double rho = opts.rho;
    ModeBlockResult result;
    result.status = ModeBlockStatus::IterationLimit;
    long it = 0;
    for (it = 1; it <= opts.max_iterations; ++it) {
        const Vector x = project_affine(z - w - cost / rho);
        const Vector xh = opts.relaxation * x + (1.0 - opts.relaxation) * z;
        const Vector v = xh + w;

        Vector znew(dim);
        const Matrix proj = project_psd(smat(v.data(), n1));
        svec(proj, znew.data());
        znew.segment(d1, 2 * K) = v.segment(d1, 2 * K).cwiseMax(0.0);

        w += xh - znew;
        const double primal = (x - znew).cwiseAbs().maxCoeff();
        const double dual = rho * (znew - z).cwiseAbs().maxCoeff();
        z = znew;
        if (primal < opts.tol && dual < opts.tol) {
            result.status = ModeBlockStatus::Converged;
            break;
        }
        // Standard residual balancing; the dual variable is rescaled so the
        // fixed point is preserved.
        if (it % 100 == 0) {
            if (primal > 10.0 * dual && rho < 1e4) {
                rho *= 2.0;
                w /= 2.0;
            } else if (dual > 10.0 * primal && rho > 1e-4) {
                rho /= 2.0;
                w *= 2.0;
            }
        }
    }
    result.iterations = std::min(it, opts.max_iterations);

    if (result.status == ModeBlockStatus::IterationLimit) {
        // Exactly feasible fallback used by callers as the enumeration route.
        result.block = MomentBlock::vertex(M, best_column_by_l1(residuals));
    } else {
        const Matrix x = smat(z.data(), n1);
        result.block.lambda = x.block(1, 0, M, 1);
        result.block.Lambda = x.block(1, 1, M, M);
    }
    result.objective = (residuals * result.block.lambda).lpNorm<1>();
    return result;
}

std::vector<ModeBlockResult> solve_mode_blocks(const std::vector<Matrix>& residuals,
                                               const ModeBlockOptions& opts, int threads) {
    std::vector<ModeBlockResult> results(residuals.size());
    parallel_for(static_cast<long>(residuals.size()), threads,
                 [&](long i) { results[static_cast<size_t>(i)] = solve_mode_block(residuals[static_cast<size_t>(i)], opts); });
    return results;
}

}  // namespace switchnet
