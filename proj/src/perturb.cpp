#include "nodal/perturb.hpp"
#include "nodal/errors.hpp"
#include "nodal/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace nodal {

namespace {

// Pseudo-inverse of (A - lambda I) that zeroes the listed eigendirections
// by index rather than by value.
Mat pinv_excluding(const EigenSystem& es, double lambda, const std::vector<int>& excluded) {
    const int n = static_cast<int>(es.values.size());
    Mat out = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        if (std::find(excluded.begin(), excluded.end(), j) != excluded.end()) continue;
        out += es.vectors.col(j) * es.vectors.col(j).transpose() / (es.values(j) - lambda);
    }
    return out;
}

std::vector<int> eigenvalue_cluster(const EigenSystem& es, int k, double tol_cluster) {
    std::vector<int> cluster{k};
    for (int j = k - 1; j >= 0 && es.values(j + 1) - es.values(j) <= tol_cluster; --j)
        cluster.insert(cluster.begin(), j);
    for (int j = k + 1; j < es.values.size() && es.values(j) - es.values(j - 1) <= tol_cluster; ++j)
        cluster.push_back(j);
    return cluster;
}

void orient_first_entry(Vec& v) {
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-9) {
            if (v(i) < 0) v = -v;
            return;
        }
}

} // namespace

double simplicity_radius(const Mat& a, const Mat& b, const Tolerances& tol) {
    EigenSystem ea = jacobi_eigensystem(a);
    double scale = 1.0 + ea.norm();
    if (ea.values.size() > 1 && ea.min_gap() <= tol.gap * scale)
        throw DegenerateBase("base matrix does not have simple eigenvalues");
    double bnorm = jacobi_eigensystem(b).norm();
    if (bnorm == 0.0) return std::numeric_limits<double>::infinity();
    return ea.min_gap() / bnorm;
}

double PerturbationSeries::lambda_at(double eps) const {
    double acc = 0;
    for (int j = order; j >= 0; --j) acc = acc * eps + lambda_coeffs[j];
    return acc;
}

Vec PerturbationSeries::vector_at(double eps) const {
    Vec acc = Vec::Zero(vector_coeffs[0].size());
    for (int j = order; j >= 0; --j) acc = acc * eps + vector_coeffs[j];
    return acc;
}

PerturbationSeries perturbation_series(const Mat& a, const Mat& b, int k, int order,
                                       const Tolerances& tol) {
    EigenSystem es = jacobi_eigensystem(a);
    const double scale = 1.0 + es.norm();
    const double tol_cluster = tol.gap * scale;
    std::vector<int> cluster = eigenvalue_cluster(es, k, tol_cluster);
    const double lambda0 = es.values(k);

    PerturbationSeries ps;

    if (cluster.size() == 1) {
        Mat pinv = pinv_excluding(es, lambda0, cluster);
        ps.order = order;
        ps.lambda_coeffs = {lambda0};
        ps.vector_coeffs = {es.vectors.col(k)};
        for (int j = 1; j <= order; ++j) {
            const Vec& prev = ps.vector_coeffs[j - 1];
            double lam_j = ps.vector_coeffs[0].dot(b * prev);
            ps.lambda_coeffs.push_back(lam_j);
            Vec rhs = -(b * prev);
            for (int m = 1; m <= j; ++m)
                rhs += ps.lambda_coeffs[m] * ps.vector_coeffs[j - m];
            ps.vector_coeffs.push_back(pinv * rhs);
        }
        return ps;
    }

    // Multiple branch: split the cluster by the restriction of B; only the
    // first-order coefficients are defined here.
    const int m = static_cast<int>(cluster.size());
    Mat restricted(m, m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            restricted(x, y) = es.vectors.col(cluster[x]).dot(b * es.vectors.col(cluster[y]));
    restricted = 0.5 * (restricted + restricted.transpose().eval());
    EigenSystem split = jacobi_eigensystem(restricted);

    double bnorm = jacobi_eigensystem(b).norm();
    for (int x = 0; x + 1 < m; ++x)
        if (split.gaps(x) <= tol.gap * (1.0 + bnorm))
            throw UnresolvedMultiplicity("first-order eigenvalues collide on the cluster");

    // the r-th smallest member of the cluster follows the r-th smallest
    // first-order value for small positive eps
    int rank = static_cast<int>(std::find(cluster.begin(), cluster.end(), k) - cluster.begin());

    std::vector<Vec> branch_vecs;
    for (int x = 0; x < m; ++x) {
        Vec v = Vec::Zero(a.rows());
        for (int y = 0; y < m; ++y) v += split.vectors(y, x) * es.vectors.col(cluster[y]);
        orient_first_entry(v);
        branch_vecs.push_back(std::move(v));
    }

    MultipleSplit ms;
    ms.peers = cluster;
    for (int x = 0; x < m; ++x) ms.lambda1.push_back(split.values(x));

    Mat pinv = pinv_excluding(es, lambda0, cluster);
    const Vec& phi0 = branch_vecs[rank];
    Vec phi1 = -(pinv * (b * phi0));
    for (int x = 0; x < m; ++x) {
        if (x == rank) continue;
        double c = (pinv * (b * branch_vecs[x])).dot(b * phi0) /
                   (split.values(rank) - split.values(x));
        phi1 += c * branch_vecs[x];
    }

    ps.order = 1;
    ps.lambda_coeffs = {lambda0, split.values(rank)};
    ps.vector_coeffs = {phi0, phi1};
    ps.split = std::move(ms);
    return ps;
}

namespace {

struct LevelSigns {
    Mat signs;        // entries in {-1, 0, 1}
    Mat vectors;      // oriented eigenvectors
    bool valid = false;
};

LevelSigns level_signs(const Mat& a, const Mat& b, double eps, const Tolerances& tol,
                       const std::vector<Vec>& anchors, const Mat* prev_vectors) {
    LevelSigns out;
    EigenSystem es = jacobi_eigensystem(a + eps * b);
    const int n = static_cast<int>(a.rows());
    const double scale = 1.0 + es.norm();
    if (n > 1 && es.min_gap() <= tol.gap * scale) return out;

    out.vectors = es.vectors;
    for (int k = 0; k < n; ++k) {
        double dot = 0;
        if (!anchors.empty() && anchors[k].size() == n)
            dot = anchors[k].dot(out.vectors.col(k));
        else if (prev_vectors)
            dot = prev_vectors->col(k).dot(out.vectors.col(k));
        else
            dot = 1.0;  // keep the solver's own convention on the first level
        if (dot < 0) out.vectors.col(k) = -out.vectors.col(k);
        else if (dot == 0) return out;  // alignment undefined; treat as unstable
    }

    out.signs = Mat::Zero(n, n);
    const double floor = tol.zero * scale;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            double x = out.vectors(i, k);
            if (std::abs(x) > floor) out.signs(i, k) = x > 0 ? 1.0 : -1.0;
        }
    out.valid = true;
    return out;
}

bool signs_agree(const Mat& a, const Mat& b) {
    for (int k = 0; k < a.cols(); ++k)
        for (int i = 0; i < a.rows(); ++i)
            if (a(i, k) != 0 && b(i, k) != 0 && a(i, k) != b(i, k)) return false;
    return true;
}

} // namespace

SignMatrix stabilized_signs(const Mat& a, const Mat& b, const StabilizeParams& params,
                            const Tolerances& tol) {
    const int n = static_cast<int>(a.rows());
    EigenSystem ea = jacobi_eigensystem(a);
    const double scale_a = 1.0 + ea.norm();
    const bool base_simple = n == 1 || ea.min_gap() > tol.gap * scale_a;

    double eps0 = params.eps0;
    if (eps0 <= 0) {
        if (base_simple) {
            double T = simplicity_radius(a, b, tol);
            eps0 = std::isfinite(T) ? std::min(0.1, T / 4.0) : 0.1;
        } else {
            eps0 = 1e-2;
        }
    }

    // branch anchors fix the orientation of each perturbed eigenvector
    std::vector<Vec> anchors(n);
    for (int k = 0; k < n; ++k) {
        auto cluster = eigenvalue_cluster(ea, k, tol.gap * scale_a);
        if (cluster.size() == 1) {
            anchors[k] = ea.vectors.col(k);
        } else {
            try {
                anchors[k] = perturbation_series(a, b, k, 1, tol).vector_coeffs[0];
            } catch (const UnresolvedMultiplicity&) {
                anchors[k] = Vec();  // fall back to level chaining
            }
        }
    }

    LevelSigns prev;
    double eps = eps0;
    for (int level = 0; level < params.max_halvings; ++level, eps /= 2) {
        LevelSigns cur = level_signs(a, b, eps, tol, anchors, prev.valid ? &prev.vectors : nullptr);
        if (!cur.valid) {
            prev = LevelSigns{};
            continue;
        }
        if (prev.valid && signs_agree(prev.signs, cur.signs)) {
            // entries below the floor at both levels: resolve by the series
            Mat stable = cur.signs;
            for (int k = 0; k < n; ++k) {
                bool need = false;
                for (int i = 0; i < n; ++i)
                    if (stable(i, k) == 0 && prev.signs(i, k) == 0) need = true;
                if (!need) continue;
                try {
                    PerturbationSeries ps = perturbation_series(a, b, k, n, tol);
                    for (int i = 0; i < n; ++i) {
                        if (stable(i, k) != 0 || prev.signs(i, k) != 0) continue;
                        for (int j = 0; j <= ps.order; ++j) {
                            double x = ps.vector_coeffs[j](i);
                            if (std::abs(x) > 1e-10 * scale_a) {
                                stable(i, k) = x > 0 ? 1.0 : -1.0;
                                break;
                            }
                        }
                    }
                } catch (const UnresolvedMultiplicity&) {
                    // leave unresolved zeros in place
                }
            }
            return {stable, eps};
        }
        prev = cur;
    }
    throw NoStabilization("sign stabilization budget exhausted");
}

SignBasis sign_vanishing_entries(const SupportedMatrix& a, std::uint64_t seed,
                                 int max_resamples, const Tolerances& tol) {
    EigenSystem ea = jacobi_eigensystem(a.entries());
    const double scale = 1.0 + ea.norm();
    if (!a.strictly_supported())
        throw PreconditionFailed("matrix must be strictly supported");
    if (a.n() > 1 && ea.min_gap() <= tol.gap * scale)
        throw DegenerateBase("sign_vanishing_entries requires simple eigenvalues");

    std::string last;
    for (int r = 0; r < max_resamples; ++r) {
        SupportedMatrix b =
            random_supported_matrix(a.graph(), a.mode(), mix_seed(seed, "resample-" + std::to_string(r)));
        try {
            SignMatrix sm = stabilized_signs(a.entries(), b.entries(), {}, tol);
            // continuity: must agree with the unperturbed signs on solid entries
            bool consistent = true;
            for (int k = 0; k < a.n() && consistent; ++k)
                for (int i = 0; i < a.n(); ++i) {
                    double x = ea.vectors(i, k);
                    if (std::abs(x) > 1e-6 * scale &&
                        sm.signs(i, k) != (x > 0 ? 1.0 : -1.0)) {
                        consistent = false;
                        break;
                    }
                }
            if (!consistent) {
                last = "stabilized signs contradict the unperturbed basis";
                continue;
            }
            return {sm.signs, sm.epsilon, seed, r};
        } catch (const NoStabilization& e) {
            last = e.what();
        }
    }
    throw NoStabilization("no stabilizing perturbation found after " +
                          std::to_string(max_resamples) + " resamples: " + last);
}

SurveyResult diag_perturbation_sign_survey(long long samples, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SurveyResult out;
    long long hit = 0;
    for (long long t = 0; t < samples; ++t) {
        double d[4];
        for (;;) {
            for (double& x : d) x = unif(rng);
            unsigned facet = static_cast<unsigned>(rng() % 8);
            d[facet >> 1] = (facet & 1) ? -1.0 : 1.0;
            if (std::abs(d[0] + d[2] - d[1] - d[3]) > 1e-12) break;
            ++out.rejected;
        }
        bool c1 = std::signbit(2 * d[3] - d[0] - d[2]) != std::signbit(2 * d[1] - d[0] - d[2]);
        bool c2 = std::signbit(2 * d[2] - d[1] - d[3]) != std::signbit(2 * d[0] - d[1] - d[3]);
        if (c1 && c2) ++hit;
    }
    out.fraction = static_cast<double>(hit) / samples;
    out.complement = 1.0 - out.fraction;
    return out;
}

} // namespace nodal
