#pragma once

// Reference implementations used by both the unit tests and the acceptance
// suite.  They deliberately share no code with the library solvers: linear
// programs are checked by exhaustive vertex enumeration and mode searches by
// direct column enumeration.

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "switchnet/lp.hpp"

namespace oracles {

using switchnet::Index;
using switchnet::LinearProgram;
using switchnet::Matrix;
using switchnet::Vector;

inline bool point_feasible(const LinearProgram& lp, const Vector& x, double tol) {
    for (Index r = 0; r < lp.eq_coeffs.rows(); ++r) {
        const double b = lp.eq_rhs(r);
        if (std::abs(lp.eq_coeffs.row(r).dot(x) - b) > tol * (1.0 + std::abs(b))) return false;
    }
    for (Index r = 0; r < lp.in_coeffs.rows(); ++r) {
        const double b = lp.in_rhs(r);
        if (lp.in_coeffs.row(r).dot(x) > b + tol * (1.0 + std::abs(b))) return false;
    }
    for (Index j = 0; j < x.size(); ++j) {
        if (x(j) < lp.lower(j) - tol * (1.0 + std::abs(lp.lower(j)))) return false;
        if (x(j) > lp.upper(j) + tol * (1.0 + std::abs(lp.upper(j)))) return false;
    }
    return true;
}

/// Reference optimum by exhaustive vertex enumeration.
///
/// Every vertex of a bounded polyhedron is the unique solution of some set
/// of `n` linearly independent tight constraints drawn from the equality
/// rows (tight everywhere), the inequality rows and the finite variable
/// bounds.  Equality rows are placed in every candidate set, the remaining
/// `n - m_eq` rows are enumerated combinatorially, singular systems are
/// skipped and infeasible solutions are filtered out.
struct VertexScan {
    bool feasible = false;
    double objective = 0.0;
};

inline VertexScan scan_vertices(const LinearProgram& lp, double tol = 1e-7) {
    const Index n = lp.num_variables();
    const Index me = lp.eq_coeffs.rows();
    std::vector<Vector> rows;
    std::vector<double> rhs;
    for (Index r = 0; r < lp.in_coeffs.rows(); ++r) {
        rows.push_back(lp.in_coeffs.row(r));
        rhs.push_back(lp.in_rhs(r));
    }
    for (Index j = 0; j < n; ++j) {
        Vector e = Vector::Zero(n);
        e(j) = 1.0;
        if (std::isfinite(lp.lower(j))) {
            rows.push_back(e);
            rhs.push_back(lp.lower(j));
        }
        if (std::isfinite(lp.upper(j))) {
            rows.push_back(e);
            rhs.push_back(lp.upper(j));
        }
    }

    VertexScan best;
    const auto evaluate = [&](const std::vector<std::size_t>& pick) {
        Matrix m(n, n);
        Vector v(n);
        for (Index r = 0; r < me; ++r) {
            m.row(r) = lp.eq_coeffs.row(r);
            v(r) = lp.eq_rhs(r);
        }
        for (std::size_t i = 0; i < pick.size(); ++i) {
            m.row(me + static_cast<Index>(i)) = rows[pick[i]].transpose();
            v(me + static_cast<Index>(i)) = rhs[pick[i]];
        }
        Eigen::FullPivLU<Matrix> lu(m);
        if (!lu.isInvertible()) return;
        const Vector x = lu.solve(v);
        if (!point_feasible(lp, x, tol)) return;
        const double obj = lp.objective.dot(x);
        if (!best.feasible || obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
        }
    };

    const std::size_t k = static_cast<std::size_t>(n - me);
    if (k == 0) {
        evaluate({});
        return best;
    }
    if (rows.size() < k) return best;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
        evaluate(pick);
        std::size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (pick[i] != i + rows.size() - k) {
                ++pick[i];
                for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return best;
}

/// Feasible-by-construction boxed random program: the right-hand sides are
/// generated from an interior point, so the optimum exists and is attained
/// at a vertex.  Sizes stay small enough for the enumeration oracle; the
/// equality count grows with the dimension to cap the combinatorics.
inline LinearProgram random_boxed_lp(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const Index n = 2 + static_cast<Index>(rng() % 7);  // 2..8 variables
    const Index me_min = std::max<Index>(0, n - 5);
    const Index me_max = std::min<Index>(3, n - 1);
    const Index me = me_min + static_cast<Index>(rng() % (me_max - me_min + 1));
    const Index mi = 1 + static_cast<Index>(rng() % (12 - me));

    LinearProgram lp = LinearProgram::with_variables(n);
    Vector x0(n);
    for (Index j = 0; j < n; ++j) {
        const double lo = -3.0 + 2.5 * unit(rng);
        const double hi = lo + 1.0 + 3.0 * unit(rng);
        lp.lower(j) = lo;
        lp.upper(j) = hi;
        x0(j) = lo + (0.25 + 0.5 * unit(rng)) * (hi - lo);
    }
    lp.eq_coeffs.resize(me, n);
    for (Index r = 0; r < me; ++r)
        for (Index j = 0; j < n; ++j) lp.eq_coeffs(r, j) = gauss(rng);
    lp.eq_rhs = lp.eq_coeffs * x0;
    lp.in_coeffs.resize(mi, n);
    lp.in_rhs.resize(mi);
    for (Index r = 0; r < mi; ++r) {
        for (Index j = 0; j < n; ++j) lp.in_coeffs(r, j) = gauss(rng);
        lp.in_rhs(r) = lp.in_coeffs.row(r).dot(x0) + 0.1 + 1.9 * unit(rng);
    }
    for (Index j = 0; j < n; ++j) lp.objective(j) = gauss(rng);
    return lp;
}

/// Independent reference for mode searches: 1-norm of every column,
/// smallest wins, lowest index on ties.  Optionally reports the gap to the
/// runner-up so callers can skip near-ties.
inline Index argmin_column_norm(const Matrix& r, double* margin = nullptr) {
    Index best = 0;
    double best_norm = r.col(0).cwiseAbs().sum();
    double second = std::numeric_limits<double>::infinity();
    for (Index j = 1; j < r.cols(); ++j) {
        const double norm = r.col(j).cwiseAbs().sum();
        if (norm < best_norm) {
            second = best_norm;
            best_norm = norm;
            best = j;
        } else {
            second = std::min(second, norm);
        }
    }
    if (margin != nullptr) *margin = second - best_norm;
    return best;
}

/// Rows with a uniform sign: no cross-column cancellation is possible, so
/// the relaxed 1-norm objective is linear in the mode weights and a vertex
/// of the simplex is optimal.
inline Matrix sign_uniform_matrix(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix r(rows, cols);
    for (Index k = 0; k < rows; ++k) {
        const double sign = (rng() & 1u) ? 1.0 : -1.0;
        for (Index j = 0; j < cols; ++j) r(k, j) = sign * std::abs(gauss(rng));
    }
    return r;
}

}  // namespace oracles
