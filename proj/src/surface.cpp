#include "switchnet/surface.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "switchnet/parallel.hpp"

namespace switchnet {

SurfaceModel fit_surface(const std::vector<Vector>& points, const std::vector<int>& labels,
                         const SurfaceFitOptions& opts, SurfaceFitInfo* info) {
    if (points.empty()) throw std::invalid_argument("fit_surface: no training points");
    if (points.size() != labels.size())
        throw std::invalid_argument("fit_surface: point and label counts differ");
    if (opts.degree < 1) throw std::invalid_argument("fit_surface: degree must be >= 1");
    if (!(opts.gamma > 0.0)) throw std::invalid_argument("fit_surface: gamma must be positive");

    const Index D = points.front().size();
    bool has_positive = false;
    bool has_negative = false;
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != D)
            throw std::invalid_argument("fit_surface: point " + std::to_string(i + 1) +
                                        " has inconsistent dimension");
        if (labels[i] == 1)
            has_positive = true;
        else if (labels[i] == -1)
            has_negative = true;
        else
            throw std::invalid_argument("fit_surface: labels must be +1 or -1, got " +
                                        std::to_string(labels[i]));
    }
    if (!has_positive || !has_negative)
        throw std::invalid_argument("fit_surface: training data contains a single class");

    const PolynomialBasis basis(D, opts.degree, BasisKind::TotalDegree);
    const Index F = basis.length() - 1;  // constant term folded into the bias
    const Index S = static_cast<Index>(points.size());

    Matrix features(S, F);
    for (Index i = 0; i < S; ++i)
        features.row(i) = basis.eval(points[static_cast<size_t>(i)]).tail(F).transpose();

    // Standardize so the l1 penalty treats monomials of different magnitude
    // comparably; the transform is folded back into the returned model.
    Vector mean = features.colwise().mean();
    Vector stddev(F);
    for (Index f = 0; f < F; ++f) {
        const double var = (features.col(f).array() - mean(f)).square().sum() /
                           static_cast<double>(S);
        stddev(f) = std::max(std::sqrt(var), 1e-12);
    }
    for (Index f = 0; f < F; ++f)
        features.col(f) = (features.col(f).array() - mean(f)) / stddev(f);

    // Variables: w+ (F), w- (F), bias (free), slack xi (S).
    const Index nw = 2 * F;
    const Index nv = nw + 1 + S;
    LinearProgram lp = LinearProgram::with_variables(nv);
    for (Index f = 0; f < nw; ++f) {
        lp.lower(f) = 0.0;
        lp.objective(f) = 1.0;
    }
    for (Index i = 0; i < S; ++i) {
        lp.lower(nw + 1 + i) = 0.0;
        lp.objective(nw + 1 + i) = opts.gamma;
    }
    // y_i (w' phi_i + b) + xi_i >= 1, written as <= for the inequality block.
    lp.in_coeffs = Matrix::Zero(S, nv);
    lp.in_rhs = Vector::Constant(S, -1.0);
    for (Index i = 0; i < S; ++i) {
        const double y = static_cast<double>(labels[static_cast<size_t>(i)]);
        lp.in_coeffs.block(i, 0, 1, F) = -y * features.row(i);
        lp.in_coeffs.block(i, F, 1, F) = y * features.row(i);
        lp.in_coeffs(i, nw) = -y;
        lp.in_coeffs(i, nw + 1 + i) = -1.0;
    }

    const LPSolution sol = solve_lp(lp, opts.lp);
    if (sol.status != LPStatus::Optimal)
        throw std::runtime_error(std::string("fit_surface: LP solve ended with status ") +
                                 to_string(sol.status));
    if (info) {
        info->objective = sol.objective;
        info->lp_iterations = sol.iterations;
    }

    // Fold the standardization back into raw-coordinate weights.
    SurfaceModel model;
    model.dimension = D;
    model.degree = opts.degree;
    model.exponents.assign(basis.exponents().begin() + 1, basis.exponents().end());
    model.weights = Vector(F);
    double bias = sol.primal(nw);
    for (Index f = 0; f < F; ++f) {
        const double w = sol.primal(f) - sol.primal(F + f);
        model.weights(f) = w / stddev(f);
        bias -= w * mean(f) / stddev(f);
    }
    model.bias = bias;
    return model;
}

double evaluate_surface(const SurfaceModel& model, const Vector& x) {
    if (x.size() != model.dimension)
        throw std::invalid_argument("evaluate_surface: expected a point of dimension " +
                                    std::to_string(model.dimension));
    double value = model.bias;
    for (size_t k = 0; k < model.exponents.size(); ++k) {
        double monomial = 1.0;
        for (Index i = 0; i < model.dimension; ++i) {
            const int e = model.exponents[k][static_cast<size_t>(i)];
            for (int r = 0; r < e; ++r) monomial *= x(i);
        }
        value += model.weights(static_cast<Index>(k)) * monomial;
    }
    return value;
}

SurfaceGrid export_surface_grid(const SurfaceModel& model, const Vector& lo, const Vector& hi,
                                Index resolution, int threads) {
    const Index D = model.dimension;
    if (lo.size() != D || hi.size() != D)
        throw std::invalid_argument("export_surface_grid: box corners must have the model dimension");
    for (Index i = 0; i < D; ++i)
        if (!(lo(i) <= hi(i)))
            throw std::invalid_argument("export_surface_grid: box is empty in coordinate " +
                                        std::to_string(i + 1));
    if (resolution < 2)
        throw std::invalid_argument("export_surface_grid: resolution must be >= 2");

    Index total = 1;
    for (Index i = 0; i < D; ++i) total *= resolution;

    SurfaceGrid grid;
    grid.points.resize(total, D);
    grid.values.resize(total);
    parallel_for(total, threads, [&](long row) {
        // Decode the lattice index, first coordinate slowest.
        Index rem = row;
        Vector x(D);
        for (Index i = D - 1; i >= 0; --i) {
            const Index k = rem % resolution;
            rem /= resolution;
            x(i) = lo(i) + (hi(i) - lo(i)) * static_cast<double>(k) /
                               static_cast<double>(resolution - 1);
        }
        grid.points.row(row) = x.transpose();
        grid.values(row) = evaluate_surface(model, x);
    });
    return grid;
}

}  // namespace switchnet
