#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "switchnet/linalg.hpp"

namespace switchnet {

/// Directed graph on N nodes stored as a dense 0/1 matrix; entry (p, q) = 1
/// means node q feeds node p.  Self-loops are permitted.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;

    /// Validates that `entries` is square with entries in {0, 1}.
    explicit AdjacencyMatrix(Matrix entries);

    [[nodiscard]] static AdjacencyMatrix zero(Index nodes);
    [[nodiscard]] static AdjacencyMatrix from_edges(
        Index nodes, const std::vector<std::pair<Index, Index>>& edges);

    [[nodiscard]] Index nodes() const { return entries_.rows(); }
    [[nodiscard]] const Matrix& entries() const { return entries_; }
    [[nodiscard]] bool operator==(const AdjacencyMatrix& other) const {
        return entries_ == other.entries_;
    }

private:
    Matrix entries_;
};

/// Diagonal in-degree matrix D with D_pp = sum_q A_pq.
[[nodiscard]] Matrix in_degree(const AdjacencyMatrix& adjacency);

/// Coupling Laplacian alpha * D + beta * A.  With alpha = -beta the row sums
/// vanish, so the all-ones direction is annihilated (diffusive coupling).
[[nodiscard]] Matrix coupling_laplacian(const AdjacencyMatrix& adjacency, double alpha,
                                        double beta);

/// Pairwise interaction parameters: the coupling applied on edge (p, q) is
/// channel * (alpha x_p + beta x_q) for node states in R^n.
struct CouplingSpec {
    double alpha = 1.0;
    double beta = -1.0;
    Matrix channel;  ///< n x n channel matrix C

    void validate(Index node_dim) const;
};

enum class BasisKind {
    UnivariatePowers,  ///< [1, x_1..x_n, x_1^2..x_n^2, ...]; no cross terms
    TotalDegree,       ///< all monomials of total degree <= d, graded lexicographic
};

[[nodiscard]] const char* to_string(BasisKind kind);

/// Polynomial dictionary over node states in R^n up to degree d.
class PolynomialBasis {
public:
    PolynomialBasis() = default;
    PolynomialBasis(Index node_dim, Index degree, BasisKind kind = BasisKind::UnivariatePowers);

    [[nodiscard]] Index node_dim() const { return node_dim_; }
    [[nodiscard]] Index degree() const { return degree_; }
    [[nodiscard]] BasisKind kind() const { return kind_; }
    [[nodiscard]] Index length() const { return static_cast<Index>(exponents_.size()); }
    /// Multi-index of each basis monomial, in evaluation order.
    [[nodiscard]] const std::vector<std::vector<int>>& exponents() const { return exponents_; }

    /// Evaluate every monomial at a node state of dimension node_dim.
    [[nodiscard]] Vector eval(const Vector& x) const;

private:
    Index node_dim_ = 0;
    Index degree_ = 0;
    BasisKind kind_ = BasisKind::UnivariatePowers;
    std::vector<std::vector<int>> exponents_;
};

/// One dynamical regime: intrinsic node dynamics (rows of `coeffs` weight the
/// basis monomials per state component) plus an interaction graph.
struct ModeModel {
    Matrix coeffs;  ///< n x P coefficient matrix
    AdjacencyMatrix adjacency;
};

/// Complete switched system on N identical nodes with n-dimensional states.
struct SwitchedNetworkSystem {
    Index nodes = 0;     ///< N
    Index node_dim = 0;  ///< n
    std::vector<ModeModel> modes;
    CouplingSpec coupling;
    PolynomialBasis basis;
    /// Maps the joint state in R^{N n} to the active mode index (0-based).
    std::function<Index(const Vector&)> switching_rule;

    [[nodiscard]] Index mode_count() const { return static_cast<Index>(modes.size()); }
    [[nodiscard]] Index state_dim() const { return nodes * node_dim; }
    void validate() const;
};

/// Intrinsic dynamics of a single node: coeffs * basis.eval(x).
[[nodiscard]] Vector node_field(const Matrix& coeffs, const PolynomialBasis& basis,
                                const Vector& x);

/// Kronecker product of two dense matrices.
[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

/// Joint vector field of one mode in Kronecker form:
/// stacked node dynamics plus (alpha D + beta A) (x) C acting on the state.
[[nodiscard]] Vector mode_field(const ModeModel& mode, const CouplingSpec& coupling,
                                const PolynomialBasis& basis, const Vector& x);

/// Reference evaluation as the explicit per-node sum over incoming edges.
/// Kept independent of mode_field for cross-checking.
[[nodiscard]] Vector mode_field_pairwise(const ModeModel& mode, const CouplingSpec& coupling,
                                         const PolynomialBasis& basis, const Vector& x);

/// Fit residual xdot - sum_j lambda_j F_j(x) for mode weights lambda on the
/// probability simplex.  Affine in lambda and, through F_j, in the mode
/// coefficients and adjacency entries.
[[nodiscard]] Vector residual(const std::vector<ModeModel>& modes, const CouplingSpec& coupling,
                              const PolynomialBasis& basis, const Vector& lambda, const Vector& x,
                              const Vector& xdot);

}  // namespace switchnet
