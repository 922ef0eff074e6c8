#include <doctest.h>

#include <cmath>
#include <random>

#include "switchnet/surface.hpp"

using namespace switchnet;

namespace {

/// Points in the plane labeled by a circle of radius 1.5, with a safety band
/// around the boundary so the classes are strictly separable.
void circle_data(std::vector<Vector>* points, std::vector<int>* labels, double scale = 1.0) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    while (points->size() < 160) {
        Vector p(2);
        p << coord(rng), coord(rng);
        const double r = p.norm();
        if (std::abs(r - 1.5) < 0.3) continue;
        labels->push_back(r < 1.5 ? -1 : 1);
        points->push_back(scale * p);
    }
}

int training_errors(const SurfaceModel& model, const std::vector<Vector>& points,
                    const std::vector<int>& labels) {
    int errors = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double value = evaluate_surface(model, points[i]);
        if ((value >= 0.0 ? 1 : -1) != labels[i]) ++errors;
    }
    return errors;
}

}  // namespace

TEST_CASE("fit_surface separates a one-dimensional threshold") {
    std::vector<Vector> points;
    std::vector<int> labels;
    for (const double x : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        points.push_back(Vector::Constant(1, x));
        labels.push_back(x < 0.0 ? -1 : 1);
    }
    SurfaceFitOptions opts;
    opts.degree = 1;
    SurfaceFitInfo info;
    const SurfaceModel model = fit_surface(points, labels, opts, &info);
    CHECK(model.dimension == 1);
    CHECK(model.degree == 1);
    REQUIRE(model.exponents.size() == 1);  // just x, no constant term
    CHECK(training_errors(model, points, labels) == 0);
    CHECK(info.objective >= 0.0);
    CHECK(info.lp_iterations > 0);
    // The zero crossing sits strictly between the innermost points.
    CHECK(evaluate_surface(model, Vector::Constant(1, -0.5)) < 0.0);
    CHECK(evaluate_surface(model, Vector::Constant(1, 0.5)) > 0.0);
}

TEST_CASE("flipping the labels flips the decision sign") {
    std::vector<Vector> points;
    std::vector<int> labels;
    circle_data(&points, &labels);
    std::vector<int> flipped;
    for (const int y : labels) flipped.push_back(-y);

    const SurfaceModel model = fit_surface(points, labels);
    const SurfaceModel mirror = fit_surface(points, flipped);
    Vector inside(2);
    inside << 0.1, -0.2;
    Vector outside(2);
    outside << 2.5, 1.5;
    CHECK(evaluate_surface(model, inside) < 0.0);
    CHECK(evaluate_surface(model, outside) > 0.0);
    CHECK(evaluate_surface(mirror, inside) > 0.0);
    CHECK(evaluate_surface(mirror, outside) < 0.0);
}

TEST_CASE("fit_surface learns a quadratic boundary") {
    std::vector<Vector> points;
    std::vector<int> labels;
    circle_data(&points, &labels);
    const SurfaceModel model = fit_surface(points, labels);
    CHECK(training_errors(model, points, labels) == 0);
    // The recovered boundary crosses zero near the true radius along rays.
    for (const double angle : {0.0, 1.0, 2.5, 4.0}) {
        Vector inner(2);
        inner << 1.0 * std::cos(angle), 1.0 * std::sin(angle);
        Vector outer(2);
        outer << 2.1 * std::cos(angle), 2.1 * std::sin(angle);
        CHECK(evaluate_surface(model, inner) < 0.0);
        CHECK(evaluate_surface(model, outer) > 0.0);
    }
}

TEST_CASE("fit_surface copes with badly scaled coordinates") {
    std::vector<Vector> points;
    std::vector<int> labels;
    circle_data(&points, &labels, 1000.0);
    const SurfaceModel model = fit_surface(points, labels);
    CHECK(training_errors(model, points, labels) == 0);
}

TEST_CASE("fit_surface survives a constant coordinate") {
    std::vector<Vector> points;
    std::vector<int> labels;
    for (const double x : {-2.0, -1.0, 1.0, 2.0}) {
        Vector p(2);
        p << x, 5.0;  // second coordinate carries no information
        points.push_back(p);
        labels.push_back(x < 0.0 ? -1 : 1);
    }
    const SurfaceModel model = fit_surface(points, labels);
    CHECK(training_errors(model, points, labels) == 0);
}

TEST_CASE("fit_surface validates its inputs") {
    std::vector<Vector> points = {Vector::Constant(1, 1.0), Vector::Constant(1, 2.0)};
    CHECK_THROWS_AS((void)fit_surface(points, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_surface(points, {1}), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_surface({}, {}), std::invalid_argument);
}

TEST_CASE("export_surface_grid walks the lattice with the first axis slowest") {
    SurfaceModel model;
    model.dimension = 2;
    model.degree = 1;
    model.exponents = {{1, 0}, {0, 1}};
    model.weights = Vector::Zero(2);
    model.weights << 1.0, 10.0;
    model.bias = 0.25;

    Vector lo(2);
    lo << 0.0, -1.0;
    Vector hi(2);
    hi << 1.0, 1.0;
    const SurfaceGrid grid = export_surface_grid(model, lo, hi, 3);
    REQUIRE(grid.points.rows() == 9);
    REQUIRE(grid.values.size() == 9);
    // Rows enumerate (x1, x2) with x2 cycling fastest.
    CHECK(grid.points.row(0) == Eigen::RowVector2d(0.0, -1.0));
    CHECK(grid.points.row(1) == Eigen::RowVector2d(0.0, 0.0));
    CHECK(grid.points.row(2) == Eigen::RowVector2d(0.0, 1.0));
    CHECK(grid.points.row(3) == Eigen::RowVector2d(0.5, -1.0));
    CHECK(grid.points.row(8) == Eigen::RowVector2d(1.0, 1.0));
    for (Index k = 0; k < grid.values.size(); ++k) {
        const Vector x = grid.points.row(k).transpose();
        CHECK(grid.values(k) == doctest::Approx(evaluate_surface(model, x)).epsilon(1e-12));
    }

    const SurfaceGrid threaded = export_surface_grid(model, lo, hi, 3, 4);
    CHECK((threaded.values.array() == grid.values.array()).all());

    // Resolution 2 keeps only the corners; below that the lattice is invalid.
    SurfaceModel cube = model;
    cube.dimension = 3;
    cube.exponents = {{1, 0, 0}};
    cube.weights = Vector::Ones(1);
    const SurfaceGrid corners =
        export_surface_grid(cube, Vector::Zero(3), Vector::Ones(3), 2);
    CHECK(corners.points.rows() == 8);
    CHECK_THROWS_AS((void)export_surface_grid(cube, Vector::Zero(3), Vector::Ones(3), 1),
                    std::invalid_argument);
}
