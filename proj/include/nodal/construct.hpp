#ifndef NODAL_CONSTRUCT_HPP
#define NODAL_CONSTRUCT_HPP

#include "nodal/cover.hpp"
#include "nodal/matrix.hpp"
#include "nodal/nodal.hpp"

#include <cstdint>
#include <optional>

namespace nodal {

struct ConstructionResult {
    SupportedMatrix matrix;
    Mat basis;                        // orthonormal, ordered with the values
    std::optional<long long> target_total;
    long long achieved_total = 0;
    NccReport ncc;
    NodalReport report;               // counts for `basis`
};

struct DenseGraphSpec {
    Graph graph;
    int m;   // clique part size
    int l;   // edges removed at vertex 1
};

// The clique-with-a-path extremizer family: edges (1,i) for l+1 < i <= m,
// the clique on 2..m, and the path m..n; beta(G) = beta.
DenseGraphSpec extremizer_graph_dense(int n, int beta);

struct DenseBlock {
    SupportedMatrix matrix;  // on G_{n,beta} with m = n
    Mat basis;               // closed-form eigenvectors, columns ordered
    Vec values;              // closed-form eigenvalues (with multiplicity)
};

// The three-block matrix of the dense construction together with its
// closed-form eigenpairs; requires C(n-2,2) < beta <= C(n-1,2).
DenseBlock dense_block_matrix(int n, int beta);

// Block matrix [[A1 - s I, -eps e_{n1} e_1^T], [-eps e_1 e_{n1}^T, A2]] on
// the graph joining G1's full-degree last vertex to G2's first vertex.
SupportedMatrix glue(const SupportedMatrix& a1, const SupportedMatrix& a2, double shift,
                     double eps);

// Searches the shift (doubling) and coupling (halving) until the glued
// matrix is NCC with total nu1 + nu2 + n1 n2.
ConstructionResult auto_glue(const SupportedMatrix& a1, const SupportedMatrix& a2,
                             const Tolerances& tol = {});

// Full pipeline for the tight lower bound: dense block on m vertices,
// transversality repair to NCC, then glue with a path when m < n.
// Total is C(n,2) + beta exactly.
ConstructionResult construct_dense_extremizer(int n, int beta, const Tolerances& tol = {});

// M = D(1..n) - eps A(P_n) - delta B(H_{n,beta}); total C(n,2) + beta with
// the alternating-tail sign structure. Pass eps = delta = 0 for the
// parameter ladder search.
ConstructionResult path_extremizer(int n, int beta, double eps = 0, double delta = 0,
                                   const Tolerances& tol = {});

// Zero-diagonal variant on H0_{2n,beta}: M = D(-(n..1)) (x) [[0,1],[1,0]]
// - eps A(P_2n) - delta B; total C(2n,2) + 2 beta.
ConstructionResult zero_diag_path_extremizer(int n, int beta, double eps = 0,
                                             double delta = 0, const Tolerances& tol = {});

// The strictly supported inner matrix M_eps in S0(P_2n) (no chords); NCC
// with nonzero determinant. Used by the odd-cycle construction and the
// inverse-pattern checks.
SupportedMatrix zero_diag_path_inner(int n, double eps);

// Searches eps downward until the inner matrix is NCC with |det| bounded
// away from zero; returns the matrix and the eps found.
std::pair<SupportedMatrix, double> zero_diag_path_inner_auto(int n, const Tolerances& tol = {});

// Rank-two K_n matrix A' = A_eps - I with the explicit nullspace basis;
// basis total (n-1)^2. The result does not satisfy the nodal count
// condition (the repair stage does).
ConstructionResult kn_zero_diag(int n, double eps = 0, const Tolerances& tol = {});

// NCC matrix in S0(C_len) for odd len >= 3, built by closing up the inner
// path matrix with a coupling vertex.
ConstructionResult odd_cycle_matrix(int len, const Tolerances& tol = {});

struct ZeroDiagOutcome {
    DeterminantalVerdict verdict;
    std::optional<ConstructionResult> construction;  // engaged when determinantal
    bool adjugate_vanishes_on_edges = false;  // sub-determinantal consequence check
    int singular_samples = 0;                 // sampled S0 matrices with eigenvalue near 0
};

// Classифier-driven construction: per-component blocks (edges and odd
// cycles), scale separation avoiding exceptional resolvent shifts, then
// eps on the connecting edges and delta on the remaining edges.
ZeroDiagOutcome zero_diag_ncc_matrix(const Graph& g, std::uint64_t seed = 1,
                                     int samples = 20, const Tolerances& tol = {});

} // namespace nodal

#endif
