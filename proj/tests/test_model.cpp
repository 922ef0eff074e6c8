#include <doctest.h>

#include <random>

#include "switchnet/model.hpp"

using namespace switchnet;

namespace {

AdjacencyMatrix complete_triangle() {
    Matrix a(3, 3);
    a << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    return AdjacencyMatrix(a);
}

AdjacencyMatrix directed_cycle() {
    return AdjacencyMatrix::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
}

/// Shared scalar example: f(x) = -0.1 x + 0.01 x^2 under diffusive coupling
/// with a sign-flipping channel.
struct ScalarTriangle {
    CouplingSpec coupling;
    PolynomialBasis basis{1, 2, BasisKind::UnivariatePowers};
    Matrix coeffs{1, 3};

    ScalarTriangle() {
        coupling.alpha = 1.0;
        coupling.beta = -1.0;
        coupling.channel = Matrix::Constant(1, 1, -1.0);
        coeffs << 0.0, -0.1, 0.01;
    }
};

}  // namespace

TEST_CASE("AdjacencyMatrix validates its entries") {
    Matrix ok(2, 2);
    ok << 0, 1, 1, 0;
    CHECK_NOTHROW(AdjacencyMatrix{ok});
    Matrix fractional(2, 2);
    fractional << 0, 0.5, 1, 0;
    CHECK_THROWS_AS(AdjacencyMatrix{fractional}, std::invalid_argument);
    CHECK_THROWS_AS(AdjacencyMatrix{Matrix::Zero(2, 3)}, std::invalid_argument);
}

TEST_CASE("AdjacencyMatrix::from_edges places directed entries") {
    const AdjacencyMatrix cycle = directed_cycle();
    CHECK(cycle.entries()(0, 1) == 1.0);
    CHECK(cycle.entries()(1, 2) == 1.0);
    CHECK(cycle.entries()(2, 0) == 1.0);
    CHECK(cycle.entries().sum() == 3.0);
    CHECK(AdjacencyMatrix::zero(4).entries().isZero());
    CHECK_THROWS_AS((void)AdjacencyMatrix::from_edges(2, {{0, 2}}), std::out_of_range);
}

TEST_CASE("in_degree and coupling_laplacian on the reference graphs") {
    const Matrix d_complete = in_degree(complete_triangle());
    CHECK(d_complete.diagonal().isApproxToConstant(2.0));
    CHECK(d_complete.sum() == 6.0);

    Matrix expected_complete(3, 3);
    expected_complete << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    CHECK(coupling_laplacian(complete_triangle(), 1.0, -1.0) == expected_complete);

    Matrix expected_cycle(3, 3);
    expected_cycle << 1, -1, 0, 0, 1, -1, -1, 0, 1;
    CHECK(coupling_laplacian(directed_cycle(), 1.0, -1.0) == expected_cycle);
}

TEST_CASE("diffusive coupling annihilates the consensus direction") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Index nodes = 2 + static_cast<Index>(rng() % 5);
        Matrix entries(nodes, nodes);
        for (Index p = 0; p < nodes; ++p)
            for (Index q = 0; q < nodes; ++q) entries(p, q) = (rng() & 1u) ? 1.0 : 0.0;
        const AdjacencyMatrix adjacency{entries};
        const double alpha = 0.5 + static_cast<double>(rng() % 5);
        const Matrix lap = coupling_laplacian(adjacency, alpha, -alpha);
        CHECK((lap * Vector::Ones(nodes)).isZero(0.0));  // exact cancellation
    }
}

TEST_CASE("univariate-powers basis enumerates per-component powers") {
    const PolynomialBasis basis(2, 2, BasisKind::UnivariatePowers);
    REQUIRE(basis.length() == 5);  // 1, x1, x2, x1^2, x2^2
    CHECK(basis.exponents()[0] == std::vector<int>{0, 0});
    CHECK(basis.exponents()[1] == std::vector<int>{1, 0});
    CHECK(basis.exponents()[2] == std::vector<int>{0, 1});
    CHECK(basis.exponents()[3] == std::vector<int>{2, 0});
    CHECK(basis.exponents()[4] == std::vector<int>{0, 2});
    Vector x(2);
    x << 2.0, -3.0;
    const Vector psi = basis.eval(x);
    CHECK(psi(0) == 1.0);
    CHECK(psi(1) == 2.0);
    CHECK(psi(2) == -3.0);
    CHECK(psi(3) == 4.0);
    CHECK(psi(4) == 9.0);
}

TEST_CASE("total-degree basis covers all monomials up to the degree") {
    const PolynomialBasis basis(2, 2, BasisKind::TotalDegree);
    REQUIRE(basis.length() == 6);  // binomial(2 + 2, 2)
    CHECK(basis.exponents()[0] == std::vector<int>{0, 0});
    CHECK(basis.exponents()[1] == std::vector<int>{1, 0});
    CHECK(basis.exponents()[2] == std::vector<int>{0, 1});
    CHECK(basis.exponents()[3] == std::vector<int>{2, 0});
    CHECK(basis.exponents()[4] == std::vector<int>{1, 1});
    CHECK(basis.exponents()[5] == std::vector<int>{0, 2});
    Vector x(2);
    x << 2.0, -3.0;
    const Vector psi = basis.eval(x);
    CHECK(psi(4) == -6.0);  // the cross term x1 x2
}

TEST_CASE("node_field weights the basis monomials") {
    const ScalarTriangle sys;
    const Vector f = node_field(sys.coeffs, sys.basis, Vector::Constant(1, 2.0));
    REQUIRE(f.size() == 1);
    CHECK(f(0) == doctest::Approx(-0.16));  // -0.1 * 2 + 0.01 * 4
}

TEST_CASE("kron matches the block layout") {
    Matrix a(2, 2);
    a << 1, 2, 3, 4;
    Matrix b(2, 2);
    b << 0, 5, 6, 7;
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 1) == 5.0);    // a(0,0) * b(0,1)
    CHECK(k(0, 3) == 10.0);   // a(0,1) * b(0,1)
    CHECK(k(3, 2) == 24.0);   // a(1,1) * b(1,0) = 4 * 6
    CHECK(k.block(2, 0, 2, 2) == (3.0 * b).eval());
    const Matrix eye_first = kron(Matrix::Identity(3, 3), a);
    CHECK(eye_first.block(2, 2, 2, 2) == a);
    CHECK(eye_first.block(0, 2, 2, 2).isZero());
}

TEST_CASE("mode_field on the scalar triangle at a uniform state") {
    const ScalarTriangle sys;
    const ModeModel mode{sys.coeffs, complete_triangle()};
    const Vector xdot = mode_field(mode, sys.coupling, sys.basis, Vector::Ones(3));
    // Diffusive coupling vanishes on a uniform state; only f(1) = -0.09 remains.
    REQUIRE(xdot.size() == 3);
    CHECK(xdot(0) == doctest::Approx(-0.09));
    CHECK(xdot(1) == doctest::Approx(-0.09));
    CHECK(xdot(2) == doctest::Approx(-0.09));
}

TEST_CASE("mode_field on the directed cycle matches a hand computation") {
    const ScalarTriangle sys;
    const ModeModel mode{sys.coeffs, directed_cycle()};
    Vector x(3);
    x << 1.0, 2.0, 4.0;
    const Vector xdot = mode_field(mode, sys.coupling, sys.basis, x);
    // Node p receives -(x_p - x_q) from its single neighbour q = p + 1.
    CHECK(xdot(0) == doctest::Approx(-0.09 + 1.0));
    CHECK(xdot(1) == doctest::Approx(-0.16 + 2.0));
    CHECK(xdot(2) == doctest::Approx(-0.24 - 3.0));
}

TEST_CASE("Kronecker-form field equals the pairwise sum on random systems") {
    std::mt19937_64 rng(55);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        const Index nodes = 2 + static_cast<Index>(rng() % 4);
        const Index node_dim = 1 + static_cast<Index>(rng() % 3);
        Matrix entries(nodes, nodes);
        for (Index p = 0; p < nodes; ++p)
            for (Index q = 0; q < nodes; ++q) entries(p, q) = (rng() & 1u) ? 1.0 : 0.0;
        CouplingSpec coupling;
        coupling.alpha = gauss(rng);
        coupling.beta = gauss(rng);
        coupling.channel.resize(node_dim, node_dim);
        for (Index i = 0; i < node_dim; ++i)
            for (Index j = 0; j < node_dim; ++j) coupling.channel(i, j) = gauss(rng);
        const PolynomialBasis basis(node_dim, 2,
                                    (trial % 2 == 0) ? BasisKind::UnivariatePowers
                                                     : BasisKind::TotalDegree);
        Matrix coeffs(node_dim, basis.length());
        for (Index i = 0; i < node_dim; ++i)
            for (Index j = 0; j < basis.length(); ++j) coeffs(i, j) = gauss(rng);
        const ModeModel mode{coeffs, AdjacencyMatrix{entries}};
        Vector x(nodes * node_dim);
        for (Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);

        const Vector via_kron = mode_field(mode, coupling, basis, x);
        const Vector via_pairs = mode_field_pairwise(mode, coupling, basis, x);
        const double scale = std::max(1.0, max_abs(via_pairs));
        CHECK(max_abs(via_kron - via_pairs) / scale <= 1e-12);
    }
}

TEST_CASE("residual vanishes at the generating mode") {
    const ScalarTriangle sys;
    const std::vector<ModeModel> modes = {{sys.coeffs, complete_triangle()},
                                          {sys.coeffs, directed_cycle()}};
    Vector x(3);
    x << 0.4, -1.2, 2.0;
    const Vector xdot = mode_field(modes[1], sys.coupling, sys.basis, x);
    Vector lambda(2);
    lambda << 0.0, 1.0;
    const Vector r = residual(modes, sys.coupling, sys.basis, lambda, x, xdot);
    CHECK(max_abs(r) <= 1e-14);
    // Weight on the wrong mode leaves the coupling mismatch behind.
    lambda << 1.0, 0.0;
    const Vector wrong = residual(modes, sys.coupling, sys.basis, lambda, x, xdot);
    CHECK(max_abs(wrong) > 0.1);
}

TEST_CASE("residual rejects weights off the simplex") {
    const ScalarTriangle sys;
    const std::vector<ModeModel> modes = {{sys.coeffs, complete_triangle()},
                                          {sys.coeffs, directed_cycle()}};
    const Vector x = Vector::Ones(3);
    const Vector xdot = Vector::Zero(3);
    Vector bad_sum(2);
    bad_sum << 0.6, 0.6;
    CHECK_THROWS_AS((void)residual(modes, sys.coupling, sys.basis, bad_sum, x, xdot),
                    std::invalid_argument);
    Vector negative(2);
    negative << 1.5, -0.5;
    CHECK_THROWS_AS((void)residual(modes, sys.coupling, sys.basis, negative, x, xdot),
                    std::invalid_argument);
}

TEST_CASE("SwitchedNetworkSystem::validate flags inconsistent pieces") {
    ScalarTriangle parts;
    SwitchedNetworkSystem sys;
    sys.nodes = 3;
    sys.node_dim = 1;
    sys.coupling = parts.coupling;
    sys.basis = parts.basis;
    sys.modes = {{parts.coeffs, complete_triangle()}, {parts.coeffs, directed_cycle()}};
    sys.switching_rule = [](const Vector&) { return Index{0}; };
    CHECK_NOTHROW(sys.validate());

    SwitchedNetworkSystem no_rule = sys;
    no_rule.switching_rule = nullptr;
    CHECK_THROWS_AS(no_rule.validate(), std::invalid_argument);

    SwitchedNetworkSystem bad_coeffs = sys;
    bad_coeffs.modes[0].coeffs = Matrix::Zero(2, parts.basis.length());
    CHECK_THROWS_AS(bad_coeffs.validate(), std::invalid_argument);

    SwitchedNetworkSystem bad_channel = sys;
    bad_channel.coupling.channel = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(bad_channel.validate(), std::invalid_argument);

    SwitchedNetworkSystem bad_graph = sys;
    bad_graph.modes[1].adjacency = AdjacencyMatrix::zero(4);
    CHECK_THROWS_AS(bad_graph.validate(), std::invalid_argument);
}
