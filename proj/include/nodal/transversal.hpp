#ifndef NODAL_TRANSVERSAL_HPP
#define NODAL_TRANSVERSAL_HPP

#include "nodal/eigensolve.hpp"
#include "nodal/graph.hpp"
#include "nodal/matrix.hpp"
#include "nodal/tolerances.hpp"

#include <optional>
#include <vector>

namespace nodal {

enum class SupportKind { SG, S0G };

// The subspace W = S(G) or S0(G) of symmetric matrices, described through
// a basis of its orthogonal complement (non-edge positions, plus the
// diagonal for S0).
struct SupportSubspace {
    SupportKind kind;
    Graph graph;

    int dimension() const;  // |E|+n for S(G), |E| for S0(G)
    std::vector<std::pair<int, int>> complement_positions() const;  // 0-based (i<=j)
};

struct MultiplicityProfile {
    std::vector<int> multiplicities;  // m_1..m_r, sum = n

    int distinct() const { return static_cast<int>(multiplicities.size()); }
    long long pair_sum() const;  // sum C(m_i, 2)
};

// Gap clustering of eigenvalues at threshold tol*(1+norm).
MultiplicityProfile cluster_profile(const EigenSystem& es, double tol);

struct CommutatorDim {
    int numerical_rank = 0;      // rank of X -> AX - XA over antisymmetric X
    long long formula = 0;       // C(n,2) - sum C(m_i,2) at the chosen profile
    MultiplicityProfile profile;
    bool ambiguous = false;      // clustering unstable at the tolerance
    std::optional<MultiplicityProfile> alt_profile;
};

CommutatorDim commutator_space_dim(const Mat& a, double tol = 1e-8);

struct TransversalityVerdict {
    bool transversal = false;
    int rank = 0;
    int needed = 0;   // dim of the reachable part of W-perp (trace-zero for S0)
    int deficiency = 0;
};

// Transversality of the orthogonal orbit of a with W: the commutator space
// projected onto W-perp must span it (its trace-zero part for S0, since
// commutators are trace-free).
TransversalityVerdict check_transversality(const Mat& a, const SupportSubspace& w,
                                           double tol = 1e-8);

struct RepairResult {
    Mat matrix;       // A' in W, exact support zeros
    Mat basis;        // V' = QV, orthogonal
    Vec values;       // spread eigenvalues D'
    double residual;  // final off-W residual before zeroing
    int iterations;
};

// Newton iteration with Cayley retraction realizing the transversality
// repair: spreads repeated eigenvalues to spacing target_gap, then rotates
// V D' V^T back into W. Asserts sign preservation of basis and support.
RepairResult transversal_repair(const Mat& a, const Mat& basis, const Vec& values,
                                const SupportSubspace& w, double target_gap,
                                const Tolerances& tol = {});

struct SurplusFloor {
    long long floor = 0;              // sum C(m_i, 2)
    bool bounds_guaranteed = false;   // floor >= beta
    bool transversality_possible = false;  // |E| >= floor (necessary condition)
};

SurplusFloor multiplicity_surplus_floor(const MultiplicityProfile& profile, int beta);

struct GregoryVerdict {
    int nu = 0;        // nodal count of phi
    int counting = 0;  // N(A, lambda), eigenvalues <= lambda with multiplicity
    int multiplicity = 0;
    bool holds = false;  // nu >= N - 1
};

// Berkolaiko's rank-one bound for a nowhere-vanishing eigenvector of a
// possibly repeated eigenvalue.
GregoryVerdict check_multiplicity_lower_bound(const SupportedMatrix& a, const Vec& phi,
                                              double lambda, const Tolerances& tol = {});

} // namespace nodal

#endif
