#include "nodal/nodal.hpp"
#include "nodal/errors.hpp"

#include <Eigen/LU>

#include <cmath>

namespace nodal {

NccReport check_ncc(const SupportedMatrix& a, const EigenSystem& es,
                    double tol_gap, double tol_zero) {
    NccReport r;
    const int n = a.n();
    const double scale = 1.0 + es.norm();

    r.strictly_supported = true;
    for (auto [i, j] : a.graph().edges())
        if (a.entry(i, j) == 0.0) {
            r.strictly_supported = false;
            r.offending_edges.push_back({i, j});
        }

    r.min_gap = es.min_gap();
    r.simple_spectrum = r.min_gap > tol_gap * scale;

    r.nonvanishing = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (std::abs(es.vectors(i, k)) <= tol_zero * scale) {
                r.nonvanishing = false;
                r.vanishing.push_back({k + 1, i + 1});
            }

    r.satisfied = r.strictly_supported && r.simple_spectrum && r.nonvanishing;
    return r;
}

NodalReport nodal_counts(const SupportedMatrix& a, const Mat& basis, double tol_zero) {
    const int n = a.n();
    if (basis.rows() != n || basis.cols() != n)
        throw DimensionMismatch("basis must be n x n");

    const double scale = (1.0 + a.entries().cwiseAbs().rowwise().sum().maxCoeff()) * tol_zero;

    NodalReport rep;
    rep.strong_counts.assign(n, 0);
    rep.weak_counts.assign(n, 0);
    for (auto e : a.graph().edges()) rep.per_edge[e] = 0;

    for (int k = 0; k < n; ++k) {
        for (auto [i, j] : a.graph().edges()) {
            double pi = basis(i - 1, k), pj = basis(j - 1, k);
            double thresh = scale * std::max(std::abs(pi), std::abs(pj));
            double prod = a.entry(i, j) * pi * pj;
            if (prod > thresh) {
                ++rep.strong_counts[k];
                ++rep.per_edge[{i, j}];
            }
            if (prod >= -thresh) ++rep.weak_counts[k];
        }
        rep.surpluses.push_back(rep.strong_counts[k] - k);
        rep.total += rep.strong_counts[k];
    }
    rep.average = static_cast<double>(rep.total) / n;
    double ssum = 0;
    for (int s : rep.surpluses) ssum += s;
    rep.average_surplus = ssum / n;
    return rep;
}

BoundsVerdict verify_surplus_bounds(const NodalReport& report, int beta, int n) {
    BoundsVerdict v;
    v.per_k_ok = true;
    for (int s : report.surpluses)
        if (s < 0 || s > beta) v.per_k_ok = false;
    v.lower_margin = report.average_surplus - static_cast<double>(beta) / n;
    v.upper_margin = beta - static_cast<double>(beta) / n - report.average_surplus;
    v.average_ok = v.lower_margin >= 0 && v.upper_margin >= 0;
    long long edges = beta + n - 1;
    v.negation_total = static_cast<long long>(n) * edges - report.total;
    v.pass = v.per_k_ok && v.average_ok;
    return v;
}

BipartiteVerdict bipartite_edge_check(const SupportedMatrix& a, const EigenSystem& es,
                                      const Tolerances& tol) {
    if (a.mode() != SupportMode::ZeroDiagonal)
        throw PreconditionFailed("bipartite_edge_check requires zero diagonal");
    if (!bipartition(a.graph()))
        throw PreconditionFailed("bipartite_edge_check requires a bipartite graph");
    NccReport ncc = check_ncc(a, es, tol.gap, tol.zero);
    if (!ncc.satisfied)
        throw PreconditionFailed("bipartite_edge_check requires the nodal count condition");

    const int n = a.n();
    BipartiteVerdict v;
    NodalReport rep = nodal_counts(a, es.vectors, tol.zero);
    v.per_edge_ok = true;
    for (auto& [e, c] : rep.per_edge)
        if (2 * c != n) v.per_edge_ok = false;
    double expected_avg = (n - 1) / 2.0 + betti(a.graph()) / 2.0;
    v.average_ok = std::abs(rep.average - expected_avg) < 1e-12;
    v.symmetry_ok = true;
    for (int k = 0; k < n; ++k)
        if (std::abs(es.values(k) + es.values(n - 1 - k)) > 1e-10 * (1 + es.norm()))
            v.symmetry_ok = false;
    v.pass = v.per_edge_ok && v.average_ok && v.symmetry_ok;
    return v;
}

namespace {

bool is_labeled_path(const Graph& g) {
    if (g.edge_count() != g.n() - 1) return false;
    for (int i = 1; i < g.n(); ++i)
        if (!g.has_edge(i, i + 1)) return false;
    return true;
}

} // namespace

InversePatternVerdict tridiagonal_inverse_pattern(const SupportedMatrix& a,
                                                  const Tolerances& tol) {
    const int n = a.n();
    if (!is_labeled_path(a.graph()) || n % 2 != 0)
        throw WrongGraph("tridiagonal_inverse_pattern requires the path P_{2n}");
    if (!a.strictly_supported())
        throw PreconditionFailed("matrix must be strictly supported on the path");

    EigenSystem es = jacobi_eigensystem(a.entries());
    double logdet = 0;
    for (int k = 0; k < n; ++k) {
        double lam = std::abs(es.values(k));
        if (lam == 0.0) throw SingularMatrix("zero eigenvalue");
        logdet += std::log(lam);
    }
    double bound = std::log(tol.det) + n * std::log(1.0 + es.norm());
    if (logdet <= bound) throw SingularMatrix("determinant below threshold");

    Mat inv = a.entries().fullPivLu().inverse();
    double thresh = tol.zero * inv.cwiseAbs().maxCoeff();

    InversePatternVerdict v;
    v.holds = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            bool nonzero = std::abs(inv(i - 1, j - 1)) > thresh;
            bool expected = (i % 2 == 0) && (j % 2 == 1);
            if (nonzero != expected) {
                v.holds = false;
                v.mismatches.push_back({i, j});
            }
        }
    return v;
}

bool resolvent_entrywise_nonzero(const Mat& a, double shift, double tol_zero) {
    const int n = static_cast<int>(a.rows());
    Mat shifted = a - shift * Mat::Identity(n, n);
    Eigen::FullPivLU<Mat> lu(shifted);
    if (!lu.isInvertible()) return false;
    Mat inv = lu.inverse();
    double thresh = tol_zero * inv.cwiseAbs().maxCoeff();
    return (inv.cwiseAbs().array() > thresh).all();
}

std::vector<ResolventRecord> resolvent_density_check(const SupportedMatrix& a,
                                                     const std::vector<double>& shifts,
                                                     const Tolerances& tol) {
    if ((a.entries().array() < 0.0).any())
        throw PreconditionFailed("resolvent_density_check requires a nonnegative matrix");
    if (!a.strictly_supported())
        throw PreconditionFailed("matrix must be strictly supported");

    EigenSystem es = jacobi_eigensystem(a.entries());
    const double scale = 1.0 + es.norm();
    std::vector<ResolventRecord> out;
    for (double s : shifts) {
        ResolventRecord rec;
        rec.shift = s;
        double dist = (es.values.array() - s).abs().minCoeff();
        if (dist <= tol.gap * scale) {
            rec.at_eigenvalue = true;
        } else {
            rec.entrywise_nonzero = resolvent_entrywise_nonzero(a.entries(), s, tol.zero);
        }
        out.push_back(rec);
    }
    return out;
}

} // namespace nodal
