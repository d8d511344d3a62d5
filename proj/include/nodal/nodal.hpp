#ifndef NODAL_NODAL_HPP
#define NODAL_NODAL_HPP

#include "nodal/eigensolve.hpp"
#include "nodal/matrix.hpp"
#include "nodal/tolerances.hpp"

#include <map>
#include <vector>

namespace nodal {

struct NccReport {
    bool strictly_supported = false;
    std::vector<Edge> offending_edges;           // edges with A_ij == 0
    bool simple_spectrum = false;
    double min_gap = 0;
    bool nonvanishing = false;
    std::vector<std::pair<int, int>> vanishing;  // (k, i), 1-based
    bool satisfied = false;
};

NccReport check_ncc(const SupportedMatrix& a, const EigenSystem& es,
                    double tol_gap = Tolerances{}.gap, double tol_zero = Tolerances{}.zero);

struct NodalReport {
    std::vector<int> strong_counts;   // nu_k
    std::vector<int> weak_counts;     // products >= -threshold
    std::vector<int> surpluses;       // nu_k - (k-1)
    std::map<Edge, int> per_edge;     // nu(A, (ij))
    int total = 0;
    double average = 0;
    double average_surplus = 0;
};

// Counts A_ij phi_k(i) phi_k(j) > threshold per eigenvector and per edge.
// The threshold scales with the larger endpoint entry:
// tol_zero * (1+|A|) * max(|phi_k(i)|, |phi_k(j)|).
NodalReport nodal_counts(const SupportedMatrix& a, const Mat& basis,
                         double tol_zero = Tolerances{}.zero);

struct BoundsVerdict {
    bool per_k_ok = false;       // 0 <= sigma_k <= beta for all k
    bool average_ok = false;     // beta/n <= avg surplus <= beta - beta/n
    double lower_margin = 0;     // avg surplus - beta/n
    double upper_margin = 0;     // beta - beta/n - avg surplus
    long long negation_total = 0;  // n*|E| - total, expected total for -A
    bool pass = false;
};

BoundsVerdict verify_surplus_bounds(const NodalReport& report, int beta, int n);

struct BipartiteVerdict {
    bool per_edge_ok = false;      // every nu(A,(ij)) == n/2
    bool average_ok = false;       // average nodal count == (n-1)/2 + beta/2
    bool symmetry_ok = false;      // lambda_k == -lambda_{n+1-k}
    bool pass = false;
};

// Requires zero diagonal, bipartite graph and NCC; throws PreconditionFailed.
BipartiteVerdict bipartite_edge_check(const SupportedMatrix& a, const EigenSystem& es,
                                      const Tolerances& tol = {});

struct InversePatternVerdict {
    bool holds = false;
    std::vector<std::pair<int, int>> mismatches;  // (i, j), 1-based, i >= j
};

// A^{-1}_{ij} != 0 (i >= j) iff i even and j odd, for invertible matrices
// strictly supported on the even path P_{2n}.
InversePatternVerdict tridiagonal_inverse_pattern(const SupportedMatrix& a,
                                                  const Tolerances& tol = {});

struct ResolventRecord {
    double shift = 0;
    bool at_eigenvalue = false;   // skipped
    bool entrywise_nonzero = false;
};

// For each shift not at an eigenvalue, reports whether (A - shift I)^{-1}
// is entrywise nonzero. Requires entrywise nonnegative, strictly supported a.
std::vector<ResolventRecord> resolvent_density_check(const SupportedMatrix& a,
                                                     const std::vector<double>& shifts,
                                                     const Tolerances& tol = {});

// Shared helper (no sign restriction): entrywise-nonzero test of the
// resolvent at the given shift; returns false at eigenvalues.
bool resolvent_entrywise_nonzero(const Mat& a, double shift, double tol_zero);

} // namespace nodal

#endif
