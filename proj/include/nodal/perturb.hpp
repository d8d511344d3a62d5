#ifndef NODAL_PERTURB_HPP
#define NODAL_PERTURB_HPP

#include "nodal/eigensolve.hpp"
#include "nodal/matrix.hpp"
#include "nodal/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nodal {

// A + eps B keeps a simple spectrum for |eps| < T.
// Returns +infinity when B vanishes; throws DegenerateBase when A is not
// numerically simple.
double simplicity_radius(const Mat& a, const Mat& b, const Tolerances& tol = {});

struct MultipleSplit {
    std::vector<int> peers;          // 0-based indices of the eigenvalue cluster
    std::vector<double> lambda1;     // first-order values on the cluster
};

// Coefficients of the eigenpair expansion of A + eps B at branch k.
// Normalization: <phi^(0), phi^(j)> = 0 for j >= 1.
struct PerturbationSeries {
    int order = 0;
    std::vector<double> lambda_coeffs;  // lambda^(0..J)
    std::vector<Vec> vector_coeffs;     // phi^(0..J)
    std::optional<MultipleSplit> split; // engaged on the multiple branch

    // Assembles sum eps^j coefficients.
    double lambda_at(double eps) const;
    Vec vector_at(double eps) const;
};

// Simple branch: full recursion to order J.
// Multiple branch: order 1 only (split by the restriction of B).
PerturbationSeries perturbation_series(const Mat& a, const Mat& b, int k, int order,
                                       const Tolerances& tol = {});

struct SignMatrix {
    Mat signs;      // n x n, entries in {-1, 0, +1}; column k = signs of phi_k
    double epsilon; // level at which stabilization was reached
};

struct StabilizeParams {
    double eps0 = 0.0;      // 0 = auto: min(0.1, T/4) or 1e-2
    int max_halvings = 40;
};

// Eigenvector signs of A + eps B at eps, eps/2, ... until two consecutive
// valid levels agree on every entry above the zero threshold. Vectors are
// oriented against the base branch vector phi_k^(0). Entries below the
// threshold at both final levels are resolved by the lowest-order nonzero
// series coefficient.
SignMatrix stabilized_signs(const Mat& a, const Mat& b, const StabilizeParams& params = {},
                            const Tolerances& tol = {});

struct SignBasis {
    Mat signs;
    double epsilon;
    std::uint64_t seed;
    int resamples;
};

// Samples random symmetric B supported on the graph until stabilized_signs
// succeeds and agrees with sign(phi_k(i)) wherever |phi_k(i)| is not
// negligible. Throws NoStabilization after max_resamples.
SignBasis sign_vanishing_entries(const SupportedMatrix& a, std::uint64_t seed,
                                 int max_resamples = 32, const Tolerances& tol = {});

struct SurveyResult {
    double fraction = 0;        // both sign conditions hold
    double complement = 0;
    long long rejected = 0;     // degenerate draws D1+D3 == D2+D4
};

// Monte-Carlo estimate of the fraction of diagonal perturbations of the C_4
// adjacency matrix that preserve the nullspace sign structure. D is sampled
// uniformly on the cube surface max_i |D_i| = 1. Expected value 5/18.
SurveyResult diag_perturbation_sign_survey(long long samples, std::uint64_t seed);

} // namespace nodal

#endif
