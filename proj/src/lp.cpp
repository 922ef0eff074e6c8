#include "switchnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace switchnet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
        case LPStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

LinearProgram LinearProgram::with_variables(Index nv) {
    LinearProgram lp;
    lp.objective = Vector::Zero(nv);
    lp.eq_coeffs.resize(0, nv);
    lp.eq_rhs.resize(0);
    lp.in_coeffs.resize(0, nv);
    lp.in_rhs.resize(0);
    lp.lower = Vector::Constant(nv, -kInf);
    lp.upper = Vector::Constant(nv, kInf);
    return lp;
}

void LinearProgram::validate() const {
    const Index nv = num_variables();
    auto fail = [](const std::string& what) { throw std::invalid_argument("LinearProgram: " + what); };

    if (!objective.allFinite()) fail("objective has non-finite entries");
    if (eq_coeffs.rows() != eq_rhs.size()) fail("eq_coeffs row count does not match eq_rhs");
    if (in_coeffs.rows() != in_rhs.size()) fail("in_coeffs row count does not match in_rhs");
    if (eq_coeffs.rows() > 0 && eq_coeffs.cols() != nv) fail("eq_coeffs column count does not match variables");
    if (in_coeffs.rows() > 0 && in_coeffs.cols() != nv) fail("in_coeffs column count does not match variables");
    if (eq_coeffs.size() > 0 && !eq_coeffs.allFinite()) fail("eq_coeffs has non-finite entries");
    if (in_coeffs.size() > 0 && !in_coeffs.allFinite()) fail("in_coeffs has non-finite entries");
    if (eq_rhs.size() > 0 && !eq_rhs.allFinite()) fail("eq_rhs has non-finite entries");
    if (in_rhs.size() > 0 && !in_rhs.allFinite()) fail("in_rhs has non-finite entries");
    if (lower.size() != nv || upper.size() != nv) fail("bound vectors must match the variable count");
    for (Index j = 0; j < nv; ++j) {
        if (std::isnan(lower(j)) || std::isnan(upper(j))) fail("bounds contain NaN");
        if (lower(j) == kInf || upper(j) == -kInf) fail("bounds exclude every finite value");
        if (lower(j) > upper(j))
            fail("lower bound exceeds upper bound for variable " + std::to_string(j));
    }
}

namespace {

// ---------------------------------------------------------------------------
// Bounded-variable revised simplex over the computational form
//
//   minimize  cost' z   subject to  W z = rhs,  lo <= z <= up,
//
// where W stacks the equality rows and the inequality rows (the latter
// augmented with slack columns).  Artificial columns are appended for rows
// the crash heuristic cannot cover; Phase 1 drives them to zero.
// ---------------------------------------------------------------------------
class SimplexSolver {
public:
    SimplexSolver(const LinearProgram& lp, const LPOptions& opts) : opts_(opts) {
        nv_ = lp.num_variables();
        const Index m_eq = lp.eq_coeffs.rows();
        const Index m_in = lp.in_coeffs.rows();
        m_ = m_eq + m_in;
        nstruct_ = nv_ + m_in;

        Matrix body(m_, nstruct_);
        body.setZero();
        if (m_eq > 0) body.topLeftCorner(m_eq, nv_) = lp.eq_coeffs;
        if (m_in > 0) {
            body.bottomLeftCorner(m_in, nv_) = lp.in_coeffs;
            for (Index i = 0; i < m_in; ++i) body(m_eq + i, nv_ + i) = 1.0;
        }
        rhs_.resize(m_);
        if (m_eq > 0) rhs_.head(m_eq) = lp.eq_rhs;
        if (m_in > 0) rhs_.tail(m_in) = lp.in_rhs;

        lo_ = Vector::Constant(nstruct_, 0.0);
        up_ = Vector::Constant(nstruct_, kInf);
        lo_.head(nv_) = lp.lower;
        up_.head(nv_) = lp.upper;

        state_.assign(static_cast<size_t>(nstruct_), St::AtLower);
        for (Index j = 0; j < nstruct_; ++j) {
            if (lo_(j) > -kInf)
                state_[j] = St::AtLower;
            else if (up_(j) < kInf)
                state_[j] = St::AtUpper;
            else
                state_[j] = St::FreeZero;
        }

        crash(body);
    }

    LPSolution solve(const Vector& structural_cost) {
        LPSolution sol;
        cap_ = opts_.max_iterations > 0 ? opts_.max_iterations
                                        : 10 * static_cast<long>(m_ + ntot_) + 2000;

        if (m_ == 0) {
            sol.status = solve_unconstrained(structural_cost, sol.primal);
            sol.objective = sol.primal.size() ? structural_cost.dot(sol.primal) : 0.0;
            return sol;
        }

        // Phase 1: minimize the total artificial mass when the crash basis
        // could not cover every row.
        if (nart_ > 0) {
            Vector phase1 = Vector::Zero(ntot_);
            phase1.tail(nart_).setConstant(1.0);
            const LoopExit e = run(phase1, /*phase1=*/true);
            if (e == LoopExit::IterationLimit) return finish(structural_cost, LPStatus::IterationLimit);
            const double infeas = artificial_mass();
            if (infeas > opts_.feasibility_tol) return finish(structural_cost, LPStatus::Infeasible);
            for (Index j = ntot_ - nart_; j < ntot_; ++j) {
                lo_(j) = 0.0;
                up_(j) = 0.0;
                if (state_[j] != St::Basic) state_[j] = St::AtLower;
            }
        }

        Vector cost = Vector::Zero(ntot_);
        cost.head(nv_) = structural_cost;
        const LoopExit e = run(cost, /*phase1=*/false);
        switch (e) {
            case LoopExit::Optimal: {
                // Validate the factorization drift before declaring victory.
                if (residual_norm() > 10.0 * opts_.feasibility_tol * (1.0 + rhs_.cwiseAbs().maxCoeff())) {
                    refactor();
                    const LoopExit e2 = run(cost, /*phase1=*/false);
                    if (e2 == LoopExit::Unbounded) return finish(structural_cost, LPStatus::Unbounded);
                    if (e2 == LoopExit::IterationLimit) return finish(structural_cost, LPStatus::IterationLimit);
                }
                return finish(structural_cost, LPStatus::Optimal);
            }
            case LoopExit::Unbounded: return finish(structural_cost, LPStatus::Unbounded);
            case LoopExit::IterationLimit: return finish(structural_cost, LPStatus::IterationLimit);
        }
        return finish(structural_cost, LPStatus::IterationLimit);
    }

private:
    enum class St : unsigned char { Basic, AtLower, AtUpper, FreeZero };
    enum class LoopExit { Optimal, Unbounded, IterationLimit };

    // Builds the crash basis from singleton columns and appends artificial
    // columns (one per uncovered row), then assembles W and the diagonal
    // starting inverse.
    void crash(const Matrix& body) {
        Vector xnb = Vector::Zero(nstruct_);
        for (Index j = 0; j < nstruct_; ++j) xnb(j) = nonbasic_value(j);
        Vector resid = rhs_ - body * xnb;

        std::vector<std::vector<Index>> singletons(static_cast<size_t>(m_));
        for (Index j = 0; j < nstruct_; ++j) {
            Index row = -1;
            int nnz = 0;
            for (Index i = 0; i < m_ && nnz < 2; ++i) {
                if (body(i, j) != 0.0) {
                    ++nnz;
                    row = i;
                }
            }
            if (nnz == 1) singletons[static_cast<size_t>(row)].push_back(j);
        }

        basis_.assign(static_cast<size_t>(m_), -1);
        std::vector<double> basic_value(static_cast<size_t>(m_), 0.0);
        Index uncovered = 0;
        for (Index i = 0; i < m_; ++i) {
            for (Index j : singletons[static_cast<size_t>(i)]) {
                const double a = body(i, j);
                const double v = nonbasic_value(j) + resid(i) / a;
                if (v >= lo_(j) - opts_.feasibility_tol && v <= up_(j) + opts_.feasibility_tol) {
                    basis_[static_cast<size_t>(i)] = j;
                    basic_value[static_cast<size_t>(i)] = v;
                    state_[j] = St::Basic;
                    break;
                }
            }
            if (basis_[static_cast<size_t>(i)] < 0) ++uncovered;
        }

        nart_ = uncovered;
        ntot_ = nstruct_ + nart_;
        W_.resize(m_, ntot_);
        W_.leftCols(nstruct_) = body;
        W_.rightCols(nart_).setZero();
        lo_.conservativeResize(ntot_);
        up_.conservativeResize(ntot_);
        state_.resize(static_cast<size_t>(ntot_), St::AtLower);

        Index art = nstruct_;
        for (Index i = 0; i < m_; ++i) {
            if (basis_[static_cast<size_t>(i)] >= 0) continue;
            W_(i, art) = resid(i) >= 0.0 ? 1.0 : -1.0;
            lo_(art) = 0.0;
            up_(art) = kInf;
            state_[art] = St::Basic;
            basis_[static_cast<size_t>(i)] = art;
            basic_value[static_cast<size_t>(i)] = std::abs(resid(i));
            ++art;
        }

        // Every crash column touches only its own row, so the basis matrix is
        // diagonal and its inverse is available without factorization.
        Binv_ = Matrix::Zero(m_, m_);
        xB_.resize(m_);
        for (Index i = 0; i < m_; ++i) {
            Binv_(i, i) = 1.0 / W_(i, basis_[static_cast<size_t>(i)]);
            xB_(i) = basic_value[static_cast<size_t>(i)];
        }
    }

    [[nodiscard]] double nonbasic_value(Index j) const {
        switch (state_[static_cast<size_t>(j)]) {
            case St::AtLower: return lo_(j);
            case St::AtUpper: return up_(j);
            case St::FreeZero: return 0.0;
            case St::Basic: break;
        }
        return 0.0;
    }

    [[nodiscard]] Vector assemble() const {
        Vector z = Vector::Zero(ntot_);
        for (Index j = 0; j < ntot_; ++j)
            if (state_[static_cast<size_t>(j)] != St::Basic) z(j) = nonbasic_value(j);
        for (Index i = 0; i < m_; ++i) z(basis_[static_cast<size_t>(i)]) = xB_(i);
        return z;
    }

    [[nodiscard]] double artificial_mass() const {
        double total = 0.0;
        for (Index i = 0; i < m_; ++i)
            if (basis_[static_cast<size_t>(i)] >= nstruct_) total += std::max(0.0, xB_(i));
        return total;
    }

    [[nodiscard]] double residual_norm() const {
        const Vector z = assemble();
        return (W_ * z - rhs_).cwiseAbs().maxCoeff();
    }

    void refactor() {
        Matrix B(m_, m_);
        for (Index i = 0; i < m_; ++i) B.col(i) = W_.col(basis_[static_cast<size_t>(i)]);
        Binv_ = B.partialPivLu().inverse();
        recompute_basics();
    }

    void recompute_basics() {
        Vector xnb = Vector::Zero(ntot_);
        for (Index j = 0; j < ntot_; ++j)
            if (state_[static_cast<size_t>(j)] != St::Basic) xnb(j) = nonbasic_value(j);
        xB_ = Binv_ * (rhs_ - W_ * xnb);
    }

    LoopExit run(const Vector& cost, bool phase1) {
        bool bland = false;
        long stall = 0;
        const long stall_limit = 200 + static_cast<long>(m_);

        while (true) {
            if (iterations_ >= cap_) return LoopExit::IterationLimit;
            if (iterations_ > 0 && iterations_ % 4000 == 0) refactor();

            // Pricing: reduced costs for the full column set.
            Vector cB(m_);
            for (Index i = 0; i < m_; ++i) cB(i) = cost(basis_[static_cast<size_t>(i)]);
            const Vector y = Binv_.transpose() * cB;
            const Vector d = cost - W_.transpose() * y;

            Index q = -1;
            double best = -opts_.optimality_tol;
            for (Index j = 0; j < ntot_; ++j) {
                const St st = state_[static_cast<size_t>(j)];
                if (st == St::Basic) continue;
                if (lo_(j) == up_(j)) continue;  // fixed columns never enter
                double score = 0.0;
                if (st == St::AtLower)
                    score = d(j);
                else if (st == St::AtUpper)
                    score = -d(j);
                else
                    score = -std::abs(d(j));
                if (score < best) {
                    best = score;
                    q = j;
                    if (bland) break;  // lowest eligible index
                }
            }
            if (q < 0) return LoopExit::Optimal;

            const St st_q = state_[static_cast<size_t>(q)];
            const double dir =
                (st_q == St::AtLower || (st_q == St::FreeZero && d(q) < 0.0)) ? 1.0 : -1.0;
            const Vector w = Binv_ * W_.col(q);

            // Ratio test: the entering variable moves by t in direction dir;
            // basic variable i changes at rate -dir*w_i.
            const double flip_t =
                (lo_(q) > -kInf && up_(q) < kInf) ? up_(q) - lo_(q) : kInf;
            double t_best = kInf;
            Index leave = -1;
            for (Index i = 0; i < m_; ++i) {
                const double g = dir * w(i);
                const Index bj = basis_[static_cast<size_t>(i)];
                double limit = kInf;
                if (g > 1e-11) {
                    if (lo_(bj) > -kInf) limit = std::max(0.0, (xB_(i) - lo_(bj)) / g);
                } else if (g < -1e-11) {
                    if (up_(bj) < kInf) limit = std::max(0.0, (up_(bj) - xB_(i)) / (-g));
                }
                if (limit == kInf) continue;
                const double tie = 1e-9 + 1e-7 * std::min(limit, t_best);
                if (limit < t_best - tie) {
                    t_best = limit;
                    leave = i;
                } else if (limit < t_best + tie && leave >= 0) {
                    if (bland) {
                        if (bj < basis_[static_cast<size_t>(leave)]) leave = i;
                    } else if (std::abs(w(i)) > std::abs(w(leave))) {
                        leave = i;
                    }
                }
            }

            const double t = std::min(flip_t, t_best);
            if (t == kInf) {
                if (phase1)
                    throw std::runtime_error("solve_lp: phase-1 subproblem became unbounded");
                return LoopExit::Unbounded;
            }

            ++iterations_;
            const double gain = d(q) * dir * t;  // <= 0 by construction
            if (std::abs(gain) <= 1e-13 * (1.0 + std::abs(objective_guess_))) {
                if (++stall > stall_limit && !bland) {
                    bland = true;
                    refactor();
                }
            } else {
                stall = 0;
                bland = false;
                objective_guess_ += gain;
            }

            if (flip_t <= t_best) {
                // Bound flip: no basis change.
                xB_ -= (dir * t) * w;
                state_[static_cast<size_t>(q)] =
                    state_[static_cast<size_t>(q)] == St::AtLower ? St::AtUpper : St::AtLower;
                continue;
            }

            const double enter_value = nonbasic_value(q) + dir * t;
            const Index leave_col = basis_[static_cast<size_t>(leave)];
            xB_ -= (dir * t) * w;
            // The blocking bound is finite by construction of the ratio test.
            state_[static_cast<size_t>(leave_col)] = dir * w(leave) > 0.0 ? St::AtLower : St::AtUpper;
            state_[static_cast<size_t>(q)] = St::Basic;
            basis_[static_cast<size_t>(leave)] = q;
            xB_(leave) = enter_value;

            // Product-form update of the basis inverse (rank-1).
            Vector pivot_row = Binv_.row(leave).transpose() / w(leave);
            Vector wt = w;
            wt(leave) -= 1.0;
            Binv_.noalias() -= wt * pivot_row.transpose();
        }
    }

    LPStatus solve_unconstrained(const Vector& cost, Vector& z) const {
        z = Vector::Zero(nv_);
        for (Index j = 0; j < nv_; ++j) {
            if (cost(j) > 0.0) {
                if (lo_(j) == -kInf) return LPStatus::Unbounded;
                z(j) = lo_(j);
            } else if (cost(j) < 0.0) {
                if (up_(j) == kInf) return LPStatus::Unbounded;
                z(j) = up_(j);
            } else {
                z(j) = lo_(j) > -kInf ? lo_(j) : (up_(j) < kInf ? std::min(up_(j), 0.0) : 0.0);
            }
        }
        return LPStatus::Optimal;
    }

    LPSolution finish(const Vector& structural_cost, LPStatus status) {
        LPSolution sol;
        sol.status = status;
        sol.iterations = iterations_;
        const Vector z = assemble();
        sol.primal = z.head(nv_);
        sol.objective = structural_cost.dot(sol.primal);
        return sol;
    }

    LPOptions opts_;
    Index nv_ = 0, nstruct_ = 0, ntot_ = 0, m_ = 0, nart_ = 0;
    Matrix W_;
    Vector rhs_, lo_, up_;
    std::vector<St> state_;
    std::vector<Index> basis_;
    Matrix Binv_;
    Vector xB_;
    long iterations_ = 0;
    long cap_ = 0;
    double objective_guess_ = 0.0;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp, const LPOptions& opts) {
    lp.validate();
    SimplexSolver solver(lp, opts);
    return solver.solve(lp.objective);
}

}  // namespace switchnet
