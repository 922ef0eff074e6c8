#pragma once

#include <vector>

#include "switchnet/lp.hpp"
#include "switchnet/model.hpp"

namespace switchnet {

/// Polynomial decision surface f(x) = sum_k weights_k * x^exponents_k + bias;
/// the sign of f separates the two classes.
struct SurfaceModel {
    Index dimension = 0;
    Index degree = 0;
    std::vector<std::vector<int>> exponents;  ///< monomials, constant excluded
    Vector weights;
    double bias = 0.0;
};

struct SurfaceFitOptions {
    Index degree = 2;
    double gamma = 10.0;  ///< weight of the misclassification slack
    LPOptions lp;
};

struct SurfaceFitInfo {
    double objective = 0.0;  ///< l1 weight norm + gamma * total hinge slack
    long lp_iterations = 0;
};

/// Fit a soft-margin polynomial classifier by linear programming:
/// minimize ||w||_1 + gamma * sum xi  subject to  y_i f(x_i) >= 1 - xi_i.
/// Features are standardized internally; the returned model acts on raw
/// coordinates.  Labels must contain both classes (+1 and -1).
[[nodiscard]] SurfaceModel fit_surface(const std::vector<Vector>& points,
                                       const std::vector<int>& labels,
                                       const SurfaceFitOptions& opts = {},
                                       SurfaceFitInfo* info = nullptr);

/// Decision value at a point.
[[nodiscard]] double evaluate_surface(const SurfaceModel& model, const Vector& x);

/// Uniform lattice over the box [lo, hi] with `resolution` points per axis
/// (the first coordinate varies slowest) and the decision value at each
/// point.
struct SurfaceGrid {
    Matrix points;  ///< rows are lattice points
    Vector values;
};

[[nodiscard]] SurfaceGrid export_surface_grid(const SurfaceModel& model, const Vector& lo,
                                              const Vector& hi, Index resolution = 41,
                                              int threads = 0);

}  // namespace switchnet
