#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "switchnet/lp.hpp"

using namespace switchnet;
using oracles::point_feasible;
using oracles::random_boxed_lp;
using oracles::scan_vertices;
using oracles::VertexScan;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("solve_lp handles a pure box program") {
    LinearProgram lp = LinearProgram::with_variables(3);
    lp.objective << 1.0, -2.0, 0.5;
    lp.lower << -1.0, -1.0, -1.0;
    lp.upper << 2.0, 2.0, 2.0;
    const LPSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.primal(0) == doctest::Approx(-1.0));
    CHECK(sol.primal(1) == doctest::Approx(2.0));
    CHECK(sol.primal(2) == doctest::Approx(-1.0));
    CHECK(sol.objective == doctest::Approx(-5.5));
}

TEST_CASE("solve_lp pins fixed variables") {
    LinearProgram lp = LinearProgram::with_variables(2);
    lp.objective << 1.0, 1.0;
    lp.lower << 0.75, 0.0;
    lp.upper << 0.75, 1.0;
    lp.in_coeffs.resize(1, 2);
    lp.in_coeffs << -1.0, -1.0;  // x + y >= 1
    lp.in_rhs = Vector::Constant(1, -1.0);
    const LPSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.primal(0) == doctest::Approx(0.75));
    CHECK(sol.primal(1) == doctest::Approx(0.25));
}

TEST_CASE("solve_lp on an equality-constrained program with a unique vertex") {
    // minimize x + 2 y  subject to  x + y = 1,  0 <= x <= 0.6,  y free in [0, 1].
    LinearProgram lp = LinearProgram::with_variables(2);
    lp.objective << 1.0, 2.0;
    lp.eq_coeffs.resize(1, 2);
    lp.eq_coeffs << 1.0, 1.0;
    lp.eq_rhs = Vector::Constant(1, 1.0);
    lp.lower << 0.0, 0.0;
    lp.upper << 0.6, 1.0;
    const LPSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.primal(0) == doctest::Approx(0.6));
    CHECK(sol.primal(1) == doctest::Approx(0.4));
    CHECK(sol.objective == doctest::Approx(1.4));
}

TEST_CASE("solve_lp reproduces a hand-solved least-absolute-deviation fit") {
    // minimize u + v  subject to  2 t + u - v = 3,  t in [-1, 1],  u, v >= 0.
    // The residual |3 - 2 t| is smallest at t = 1, so u = 1 and v = 0.
    LinearProgram lp = LinearProgram::with_variables(3);
    lp.objective << 0.0, 1.0, 1.0;
    lp.eq_coeffs.resize(1, 3);
    lp.eq_coeffs << 2.0, 1.0, -1.0;
    lp.eq_rhs = Vector::Constant(1, 3.0);
    lp.lower << -1.0, 0.0, 0.0;
    lp.upper << 1.0, kInf, kInf;
    const LPSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.primal(0) == doctest::Approx(1.0));
    CHECK(sol.primal(1) == doctest::Approx(1.0));
    CHECK(sol.primal(2) == doctest::Approx(0.0));
    CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("solve_lp detects contradictory equalities") {
    LinearProgram lp = LinearProgram::with_variables(2);
    lp.eq_coeffs.resize(2, 2);
    lp.eq_coeffs << 1.0, 1.0, 1.0, 1.0;
    lp.eq_rhs.resize(2);
    lp.eq_rhs << 1.0, 2.0;
    lp.lower << -10.0, -10.0;
    lp.upper << 10.0, 10.0;
    CHECK(solve_lp(lp).status == LPStatus::Infeasible);
}

TEST_CASE("solve_lp detects bound-inconsistent inequalities") {
    LinearProgram lp = LinearProgram::with_variables(1);
    lp.objective << 1.0;
    lp.lower << 0.0;
    lp.upper << 1.0;
    lp.in_coeffs.resize(1, 1);
    lp.in_coeffs << 1.0;
    lp.in_rhs = Vector::Constant(1, -1.0);  // x <= -1 against x >= 0
    CHECK(solve_lp(lp).status == LPStatus::Infeasible);
}

TEST_CASE("solve_lp detects an unbounded ray") {
    LinearProgram lp = LinearProgram::with_variables(2);
    lp.objective << -1.0, 0.0;
    lp.lower << 0.0, 0.0;
    lp.upper << kInf, 1.0;
    lp.in_coeffs.resize(1, 2);
    lp.in_coeffs << -1.0, 1.0;  // y <= x, harmless
    lp.in_rhs = Vector::Constant(1, 0.0);
    CHECK(solve_lp(lp).status == LPStatus::Unbounded);
}

TEST_CASE("solve_lp rejects malformed programs") {
    LinearProgram lp = LinearProgram::with_variables(2);
    lp.lower << 1.0, 0.0;
    lp.upper << 0.0, 1.0;  // crossed bounds on the first variable
    CHECK_THROWS_AS((void)solve_lp(lp), std::invalid_argument);

    LinearProgram bad_dims = LinearProgram::with_variables(2);
    bad_dims.eq_coeffs.resize(1, 3);
    bad_dims.eq_coeffs.setZero();
    bad_dims.eq_rhs = Vector::Zero(1);
    CHECK_THROWS_AS((void)solve_lp(bad_dims), std::invalid_argument);
}

TEST_CASE("solve_lp honours the iteration cap") {
    LinearProgram lp = LinearProgram::with_variables(3);
    lp.objective << -1.0, -1.0, -1.0;
    lp.lower << 0.0, 0.0, 0.0;
    lp.upper << 1.0, 1.0, 1.0;
    lp.in_coeffs.resize(1, 3);
    lp.in_coeffs << 1.0, 1.0, 1.0;
    lp.in_rhs = Vector::Constant(1, 2.0);
    LPOptions opts;
    opts.max_iterations = 1;
    const LPSolution sol = solve_lp(lp, opts);
    CHECK((sol.status == LPStatus::IterationLimit || sol.iterations <= 1));
}

TEST_CASE("solve_lp is deterministic") {
    const LinearProgram lp = random_boxed_lp(99);
    const LPSolution a = solve_lp(lp);
    const LPSolution b = solve_lp(lp);
    REQUIRE(a.status == b.status);
    CHECK((a.primal.array() == b.primal.array()).all());
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("solve_lp matches vertex enumeration on random boxed programs") {
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        CAPTURE(seed);
        const LinearProgram lp = random_boxed_lp(1000 + seed);
        const VertexScan oracle = scan_vertices(lp);
        REQUIRE(oracle.feasible);  // generator builds around an interior point
        const LPSolution sol = solve_lp(lp);
        REQUIRE(sol.status == LPStatus::Optimal);
        CHECK(point_feasible(lp, sol.primal, 1e-6));
        CHECK(sol.objective ==
              doctest::Approx(oracle.objective).epsilon(1e-6).scale(1.0));
        ++solved;
    }
    CHECK(solved == 30);
}

TEST_CASE("solve_lp objective is invariant under column permutation") {
    const LinearProgram lp = random_boxed_lp(7);
    const Index n = lp.num_variables();
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::mt19937_64 rng(5);
    std::shuffle(perm.begin(), perm.end(), rng);

    LinearProgram shuffled = LinearProgram::with_variables(n);
    shuffled.eq_coeffs.resize(lp.eq_coeffs.rows(), n);
    shuffled.eq_rhs = lp.eq_rhs;
    shuffled.in_coeffs.resize(lp.in_coeffs.rows(), n);
    shuffled.in_rhs = lp.in_rhs;
    for (Index j = 0; j < n; ++j) {
        const Index src = perm[static_cast<std::size_t>(j)];
        shuffled.objective(j) = lp.objective(src);
        shuffled.lower(j) = lp.lower(src);
        shuffled.upper(j) = lp.upper(src);
        shuffled.eq_coeffs.col(j) = lp.eq_coeffs.col(src);
        shuffled.in_coeffs.col(j) = lp.in_coeffs.col(src);
    }

    const LPSolution a = solve_lp(lp);
    const LPSolution b = solve_lp(shuffled);
    REQUIRE(a.status == LPStatus::Optimal);
    REQUIRE(b.status == LPStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
}
