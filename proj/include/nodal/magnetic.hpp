#ifndef NODAL_MAGNETIC_HPP
#define NODAL_MAGNETIC_HPP

#include "nodal/graph.hpp"
#include "nodal/matrix.hpp"
#include "nodal/nodal.hpp"

#include <vector>

namespace nodal {

// The magnetic family A_theta: cotree edge (r_l, s_l) carries phase
// e^{i theta_l}; everything else is untouched.
struct MagneticFrame {
    const SupportedMatrix& base;
    SpanningTreeFrame frame;
    std::vector<double> theta;  // one angle per cotree edge
};

enum class HessianMethod { FiniteDifference, Perturbative };

struct HessianStack {
    std::vector<Mat> hessians;        // H_k = Hess lambda_k(0), beta x beta
    std::vector<int> morse_indices;   // #{lambda(H_k) < -tol_hess}
    std::vector<int> strict_indices;  // #{lambda(H_k) < 0}
    std::vector<bool> degenerate;     // some |lambda(H_k)| <= tol_hess
    HessianMethod method = HessianMethod::Perturbative;
};

// Eigenvalues of the Hermitian A_theta through the real symmetric 2n x 2n
// embedding [[Re, -Im], [Im, Re]]; the doubled spectrum is pair-collapsed.
Vec magnetic_eigenvalues(const MagneticFrame& mf);

// Central second differences of lambda_k(theta) at 0 with one Richardson
// refinement (h and h/2). Throws GapTooSmall when the sorted ordering of
// lambda_k is ambiguous at scale h.
Mat hessian_fd(const SupportedMatrix& a, const SpanningTreeFrame& frame, int k, double h);

// Gradient of lambda_k at theta = 0 by Richardson-refined central
// differences; exactly zero in exact arithmetic (critical point).
Vec gradient_fd(const SupportedMatrix& a, const SpanningTreeFrame& frame, int k, double h);

// The theta-grid eigensolves are independent of k, so one grid yields the
// finite-difference Hessian and gradient of every eigenvalue at once.
struct FdBatch {
    std::vector<Mat> hessians;
    std::vector<Vec> gradients;
};
FdBatch fd_batch(const SupportedMatrix& a, const SpanningTreeFrame& frame, double h);

// Second-order eigenvalue perturbation reduction: all quantities real.
// H_{lm} = delta_{lm} (-2 A_{rs} phi_k(r) phi_k(s))
//        + 2 sum_{j != k} g_l(j) g_m(j) / (lambda_k - lambda_j),
// g_l(j) = A_{rs} (phi_j(r) phi_k(s) - phi_j(s) phi_k(r)).
Mat hessian_perturbative(const SupportedMatrix& a, const EigenSystem& es,
                         const SpanningTreeFrame& frame, int k);

HessianStack build_hessian_stack(const SupportedMatrix& a, const EigenSystem& es,
                                 const SpanningTreeFrame& frame, HessianMethod method,
                                 const Tolerances& tol = {});

struct MorseVerdict {
    std::vector<bool> per_k;          // morse index == surplus
    std::vector<bool> degenerate;     // Hessian flagged at tol_hess
    bool all_match = false;
    int flagged = 0;
};

// Checks morse_index(H_k) == surplus_k for every k. Degenerate-flagged
// Hessians fall back to the strict-sign index, and are reported.
MorseVerdict morse_verify(const SupportedMatrix& a, const EigenSystem& es,
                          const SpanningTreeFrame& frame, const NodalReport& report,
                          const Tolerances& tol = {});

} // namespace nodal

#endif
