#include "switchnet/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace switchnet {

AdjacencyMatrix::AdjacencyMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("AdjacencyMatrix: matrix must be square, got " +
                                    std::to_string(entries_.rows()) + "x" +
                                    std::to_string(entries_.cols()));
    for (Index p = 0; p < entries_.rows(); ++p)
        for (Index q = 0; q < entries_.cols(); ++q) {
            const double v = entries_(p, q);
            if (v != 0.0 && v != 1.0)
                throw std::invalid_argument(
                    "AdjacencyMatrix: entry (" + std::to_string(p) + ", " + std::to_string(q) +
                    ") = " + std::to_string(v) + " is not binary");
        }
}

AdjacencyMatrix AdjacencyMatrix::zero(Index nodes) {
    return AdjacencyMatrix(Matrix::Zero(nodes, nodes));
}

AdjacencyMatrix AdjacencyMatrix::from_edges(Index nodes,
                                            const std::vector<std::pair<Index, Index>>& edges) {
    Matrix m = Matrix::Zero(nodes, nodes);
    for (const auto& [p, q] : edges) {
        if (p < 0 || p >= nodes || q < 0 || q >= nodes)
            throw std::out_of_range("AdjacencyMatrix::from_edges: edge (" + std::to_string(p) +
                                    ", " + std::to_string(q) + ") outside a graph on " +
                                    std::to_string(nodes) + " nodes");
        m(p, q) = 1.0;
    }
    return AdjacencyMatrix(std::move(m));
}

Matrix in_degree(const AdjacencyMatrix& adjacency) {
    const Index N = adjacency.nodes();
    Matrix d = Matrix::Zero(N, N);
    for (Index p = 0; p < N; ++p) d(p, p) = adjacency.entries().row(p).sum();
    return d;
}

Matrix coupling_laplacian(const AdjacencyMatrix& adjacency, double alpha, double beta) {
    return alpha * in_degree(adjacency) + beta * adjacency.entries();
}

void CouplingSpec::validate(Index node_dim) const {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw std::invalid_argument("CouplingSpec: alpha and beta must be finite");
    if (channel.rows() != node_dim || channel.cols() != node_dim)
        throw std::invalid_argument("CouplingSpec: channel matrix must be " +
                                    std::to_string(node_dim) + "x" + std::to_string(node_dim));
    if (channel.size() > 0 && !channel.allFinite())
        throw std::invalid_argument("CouplingSpec: channel matrix has non-finite entries");
}

const char* to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::UnivariatePowers: return "univariate-powers";
        case BasisKind::TotalDegree: return "total-degree";
    }
    return "unknown";
}

namespace {

// Multi-indices of total degree exactly k over n variables, lexicographically
// descending in the leading exponent (so (k,0,..) comes first).
void append_compositions(Index n, int k, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<Index>(prefix.size()) == n - 1) {
        prefix.push_back(k);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = k; e >= 0; --e) {
        prefix.push_back(e);
        append_compositions(n, k - e, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

PolynomialBasis::PolynomialBasis(Index node_dim, Index degree, BasisKind kind)
    : node_dim_(node_dim), degree_(degree), kind_(kind) {
    if (node_dim < 1) throw std::invalid_argument("PolynomialBasis: node dimension must be >= 1");
    if (degree < 0) throw std::invalid_argument("PolynomialBasis: degree must be >= 0");
    exponents_.emplace_back(static_cast<size_t>(node_dim), 0);
    if (kind == BasisKind::UnivariatePowers) {
        for (int k = 1; k <= degree; ++k)
            for (Index i = 0; i < node_dim; ++i) {
                std::vector<int> e(static_cast<size_t>(node_dim), 0);
                e[static_cast<size_t>(i)] = k;
                exponents_.push_back(std::move(e));
            }
    } else {
        std::vector<int> prefix;
        for (int k = 1; k <= degree; ++k) append_compositions(node_dim, k, prefix, exponents_);
    }
}

Vector PolynomialBasis::eval(const Vector& x) const {
    if (x.size() != node_dim_)
        throw std::invalid_argument("PolynomialBasis::eval: expected a state of dimension " +
                                    std::to_string(node_dim_) + ", got " +
                                    std::to_string(x.size()));
    // Power table: powers(i, k) = x_i^k.
    Matrix powers(node_dim_, degree_ + 1);
    powers.col(0).setOnes();
    for (Index k = 1; k <= degree_; ++k)
        powers.col(k) = powers.col(k - 1).cwiseProduct(x);
    Vector out(length());
    for (Index m = 0; m < length(); ++m) {
        double v = 1.0;
        const auto& expo = exponents_[static_cast<size_t>(m)];
        for (Index i = 0; i < node_dim_; ++i)
            if (expo[static_cast<size_t>(i)] > 0) v *= powers(i, expo[static_cast<size_t>(i)]);
        out(m) = v;
    }
    return out;
}

void SwitchedNetworkSystem::validate() const {
    if (nodes < 1) throw std::invalid_argument("SwitchedNetworkSystem: need at least one node");
    if (node_dim < 1) throw std::invalid_argument("SwitchedNetworkSystem: node dimension must be >= 1");
    if (modes.empty()) throw std::invalid_argument("SwitchedNetworkSystem: need at least one mode");
    if (basis.node_dim() != node_dim)
        throw std::invalid_argument("SwitchedNetworkSystem: basis dimension does not match nodes");
    coupling.validate(node_dim);
    for (size_t j = 0; j < modes.size(); ++j) {
        const ModeModel& mode = modes[j];
        if (mode.coeffs.rows() != node_dim || mode.coeffs.cols() != basis.length())
            throw std::invalid_argument("SwitchedNetworkSystem: coefficient matrix of mode " +
                                        std::to_string(j + 1) + " must be " +
                                        std::to_string(node_dim) + "x" +
                                        std::to_string(basis.length()));
        if (mode.adjacency.nodes() != nodes)
            throw std::invalid_argument("SwitchedNetworkSystem: adjacency of mode " +
                                        std::to_string(j + 1) + " must have " +
                                        std::to_string(nodes) + " nodes");
    }
    if (!switching_rule)
        throw std::invalid_argument("SwitchedNetworkSystem: switching rule is not set");
}

Vector node_field(const Matrix& coeffs, const PolynomialBasis& basis, const Vector& x) {
    return coeffs * basis.eval(x);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

void check_joint_state(const ModeModel& mode, const PolynomialBasis& basis, const Vector& x,
                       const char* caller) {
    const Index N = mode.adjacency.nodes();
    const Index n = basis.node_dim();
    if (x.size() != N * n)
        throw std::invalid_argument(std::string(caller) + ": joint state must have dimension " +
                                    std::to_string(N * n) + ", got " + std::to_string(x.size()));
    if (mode.coeffs.rows() != n || mode.coeffs.cols() != basis.length())
        throw std::invalid_argument(std::string(caller) +
                                    ": coefficient matrix does not match the basis");
}

}  // namespace

Vector mode_field(const ModeModel& mode, const CouplingSpec& coupling,
                  const PolynomialBasis& basis, const Vector& x) {
    check_joint_state(mode, basis, x, "mode_field");
    coupling.validate(basis.node_dim());
    const Index N = mode.adjacency.nodes();
    const Index n = basis.node_dim();
    const Matrix lap = coupling_laplacian(mode.adjacency, coupling.alpha, coupling.beta);
    Vector out = kron(lap, coupling.channel) * x;
    for (Index p = 0; p < N; ++p)
        out.segment(p * n, n) += node_field(mode.coeffs, basis, x.segment(p * n, n));
    return out;
}

Vector mode_field_pairwise(const ModeModel& mode, const CouplingSpec& coupling,
                           const PolynomialBasis& basis, const Vector& x) {
    check_joint_state(mode, basis, x, "mode_field_pairwise");
    coupling.validate(basis.node_dim());
    const Index N = mode.adjacency.nodes();
    const Index n = basis.node_dim();
    Vector out(N * n);
    for (Index p = 0; p < N; ++p) {
        const Vector xp = x.segment(p * n, n);
        Vector acc = node_field(mode.coeffs, basis, xp);
        for (Index q = 0; q < N; ++q) {
            if (mode.adjacency.entries()(p, q) == 0.0) continue;
            acc += coupling.channel * (coupling.alpha * xp + coupling.beta * x.segment(q * n, n));
        }
        out.segment(p * n, n) = acc;
    }
    return out;
}

Vector residual(const std::vector<ModeModel>& modes, const CouplingSpec& coupling,
                const PolynomialBasis& basis, const Vector& lambda, const Vector& x,
                const Vector& xdot) {
    if (static_cast<size_t>(lambda.size()) != modes.size())
        throw std::invalid_argument("residual: lambda length must equal the mode count");
    if (lambda.size() == 0) throw std::invalid_argument("residual: need at least one mode");
    if (lambda.minCoeff() < -kFeasibilityTol || std::abs(lambda.sum() - 1.0) > kFeasibilityTol)
        throw std::invalid_argument("residual: lambda must lie on the probability simplex");
    if (xdot.size() != x.size())
        throw std::invalid_argument("residual: x and xdot must have equal dimension");
    Vector out = xdot;
    for (size_t j = 0; j < modes.size(); ++j) {
        if (lambda(static_cast<Index>(j)) == 0.0) continue;
        out -= lambda(static_cast<Index>(j)) * mode_field(modes[j], coupling, basis, x);
    }
    return out;
}

}  // namespace switchnet
