#include "nodal/transversal.hpp"
#include "nodal/errors.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace nodal {

int SupportSubspace::dimension() const {
    int e = graph.edge_count();
    return kind == SupportKind::SG ? e + graph.n() : e;
}

std::vector<std::pair<int, int>> SupportSubspace::complement_positions() const {
    std::vector<std::pair<int, int>> pos;
    const int n = graph.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!graph.has_edge(i + 1, j + 1)) pos.push_back({i, j});
    if (kind == SupportKind::S0G)
        for (int i = 0; i < n; ++i) pos.push_back({i, i});
    return pos;
}

long long MultiplicityProfile::pair_sum() const {
    long long s = 0;
    for (int m : multiplicities) s += static_cast<long long>(m) * (m - 1) / 2;
    return s;
}

MultiplicityProfile cluster_profile(const EigenSystem& es, double tol) {
    MultiplicityProfile p;
    const int n = static_cast<int>(es.values.size());
    const double thresh = tol * (1.0 + es.norm());
    int run = 1;
    for (int k = 1; k < n; ++k) {
        if (es.values(k) - es.values(k - 1) <= thresh) {
            ++run;
        } else {
            p.multiplicities.push_back(run);
            run = 1;
        }
    }
    p.multiplicities.push_back(run);
    return p;
}

namespace {

// (XM - MX)(i, j) for the antisymmetric basis element X = E_ab - E_ba.
inline double commutator_entry(const Mat& m, int a, int b, int i, int j) {
    double v = 0;
    if (i == a) v += m(b, j);
    if (i == b) v -= m(a, j);
    if (j == b) v -= m(i, a);
    if (j == a) v += m(i, b);
    return v;
}

std::vector<std::pair<int, int>> antisym_basis(int n) {
    std::vector<std::pair<int, int>> basis;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) basis.push_back({a, b});
    return basis;
}

int svd_rank(const Mat& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

} // namespace

CommutatorDim commutator_space_dim(const Mat& a, double tol) {
    const int n = static_cast<int>(a.rows());
    auto basis = antisym_basis(n);

    // vectorize AX - XA over the upper triangle (scaling is rank-neutral)
    std::vector<std::pair<int, int>> sym;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) sym.push_back({i, j});

    Mat map(static_cast<int>(sym.size()), static_cast<int>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c) {
        auto [p, q] = basis[c];
        for (size_t r = 0; r < sym.size(); ++r)
            map(static_cast<int>(r), static_cast<int>(c)) =
                commutator_entry(a, p, q, sym[r].first, sym[r].second);
    }

    CommutatorDim out;
    out.numerical_rank = svd_rank(map, tol);

    EigenSystem es = jacobi_eigensystem(a);
    out.profile = cluster_profile(es, tol);
    MultiplicityProfile coarse = cluster_profile(es, 3 * tol);
    if (coarse.multiplicities != out.profile.multiplicities) {
        out.ambiguous = true;
        out.alt_profile = coarse;
    }
    long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    out.formula = pairs - out.profile.pair_sum();
    return out;
}

TransversalityVerdict check_transversality(const Mat& a, const SupportSubspace& w,
                                           double tol) {
    const int n = static_cast<int>(a.rows());
    auto basis = antisym_basis(n);
    auto pos = w.complement_positions();

    // For S0 the diagonal part of W-perp is reachable only in its trace-zero
    // directions (commutators are trace-free), so project diagonals onto
    // consecutive differences.
    std::vector<std::pair<int, int>> offdiag;
    for (auto [i, j] : pos)
        if (i != j) offdiag.push_back({i, j});
    const int diag_rows = w.kind == SupportKind::S0G ? n - 1 : 0;
    const int rows = static_cast<int>(offdiag.size()) + diag_rows;

    Mat map(rows, static_cast<int>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c) {
        auto [p, q] = basis[c];
        int r = 0;
        for (auto [i, j] : offdiag) map(r++, static_cast<int>(c)) = commutator_entry(a, p, q, i, j);
        for (int i = 0; i + 1 < n && w.kind == SupportKind::S0G; ++i)
            map(r++, static_cast<int>(c)) = commutator_entry(a, p, q, i, i) -
                                            commutator_entry(a, p, q, i + 1, i + 1);
    }

    TransversalityVerdict v;
    v.needed = rows;
    v.rank = svd_rank(map, tol);
    v.deficiency = v.needed - v.rank;
    v.transversal = v.deficiency == 0;
    return v;
}

namespace {

Vec spread_values(const Vec& values, double gap, double cluster_tol) {
    const int n = static_cast<int>(values.size());
    Vec out = values;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && values(j + 1) - values(i) <= cluster_tol) ++j;
        int m = j - i + 1;
        // symmetric spreading about the cluster mean keeps the trace exact,
        // which the S0 target needs (commutators cannot move the trace)
        double mean = values.segment(i, m).mean();
        for (int t = 0; t < m; ++t) out(i + t) = mean + gap * (t - (m - 1) / 2.0);
        i = j + 1;
    }
    for (int k = 0; k + 1 < n; ++k)
        if (out(k + 1) - out(k) <= 0.4 * gap)
            throw NewtonStalled("eigenvalue spreading collided; shrink target_gap");
    return out;
}

} // namespace

RepairResult transversal_repair(const Mat& a, const Mat& basis, const Vec& values,
                                const SupportSubspace& w, double target_gap,
                                const Tolerances& tol) {
    const int n = static_cast<int>(a.rows());
    const double norm_a = values.cwiseAbs().maxCoeff();
    const double cluster_tol = tol.gap * (1.0 + norm_a);

    Vec spread = spread_values(values, target_gap, cluster_tol);
    Mat tilde = basis * spread.asDiagonal() * basis.transpose();
    tilde = 0.5 * (tilde + tilde.transpose().eval());  // bit-exact symmetry

    auto pos = w.complement_positions();
    auto anti = antisym_basis(n);
    auto residual = [&](const Mat& m) {
        Vec r(static_cast<int>(pos.size()));
        for (size_t t = 0; t < pos.size(); ++t) r(static_cast<int>(t)) = m(pos[t].first, pos[t].second);
        return r;
    };

    Mat q = Mat::Identity(n, n);
    Mat m = tilde;
    const double goal = 1e-12 * (norm_a > 0 ? norm_a : 1.0);
    double rnorm = residual(m).norm();
    int it = 0;
    for (; it < 60 && rnorm > goal; ++it) {
        Vec r = residual(m);
        Mat map(static_cast<int>(pos.size()), static_cast<int>(anti.size()));
        for (size_t c = 0; c < anti.size(); ++c)
            for (size_t t = 0; t < pos.size(); ++t)
                map(static_cast<int>(t), static_cast<int>(c)) =
                    commutator_entry(m, anti[c].first, anti[c].second, pos[t].first, pos[t].second);

        Eigen::CompleteOrthogonalDecomposition<Mat> cod(map);
        Vec x = cod.solve(-r);

        Mat xmat = Mat::Zero(n, n);
        for (size_t c = 0; c < anti.size(); ++c) {
            xmat(anti[c].first, anti[c].second) = x(static_cast<int>(c));
            xmat(anti[c].second, anti[c].first) = -x(static_cast<int>(c));
        }
        Mat cay = (Mat::Identity(n, n) - 0.5 * xmat)
                      .fullPivLu()
                      .solve(Mat::Identity(n, n) + 0.5 * xmat);
        q = cay * q;
        m = q * tilde * q.transpose();
        m = 0.5 * (m + m.transpose().eval());

        double next = residual(m).norm();
        if (it > 4 && next > 0.9 * rnorm)
            throw NewtonStalled("repair residual stalled at " + std::to_string(next));
        rnorm = next;
    }
    if (rnorm > goal) throw NewtonStalled("repair did not reach the residual goal");

    RepairResult out;
    out.matrix = m;
    for (auto [i, j] : pos) {
        out.matrix(i, j) = 0;
        out.matrix(j, i) = 0;
    }
    out.basis = q * basis;
    out.values = spread;
    out.residual = rnorm;
    out.iterations = it;

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (std::signbit(out.basis(i, k)) != std::signbit(basis(i, k)))
                throw NewtonStalled("repair flipped an eigenbasis sign; shrink target_gap");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0 && std::signbit(out.matrix(i, j)) != std::signbit(a(i, j)))
                throw NewtonStalled("repair flipped a support sign; shrink target_gap");
    return out;
}

SurplusFloor multiplicity_surplus_floor(const MultiplicityProfile& profile, int beta) {
    SurplusFloor f;
    f.floor = profile.pair_sum();
    f.bounds_guaranteed = f.floor >= beta;
    int n = 0;
    for (int m : profile.multiplicities) n += m;
    long long edges = static_cast<long long>(beta) + n - 1;
    f.transversality_possible = edges >= f.floor;
    return f;
}

GregoryVerdict check_multiplicity_lower_bound(const SupportedMatrix& a, const Vec& phi,
                                              double lambda, const Tolerances& tol) {
    const int n = a.n();
    if (!a.strictly_supported())
        throw PreconditionFailed("matrix must be strictly supported");
    if (phi.size() != n) throw DimensionMismatch("eigenvector length mismatch");

    EigenSystem es = jacobi_eigensystem(a.entries());
    const double scale = 1.0 + es.norm();
    double res = (a.entries() * phi - lambda * phi).norm() / phi.norm();
    if (res > 1e-8 * scale) throw NotAnEigenvector("residual " + std::to_string(res));
    for (int i = 0; i < n; ++i)
        if (std::abs(phi(i)) <= tol.zero * scale * phi.norm())
            throw VanishingEntry("entry " + std::to_string(i + 1) + " vanishes");

    GregoryVerdict v;
    // cluster containing lambda
    int lo = n, hi = -1;
    for (int k = 0; k < n; ++k)
        if (std::abs(es.values(k) - lambda) <= tol.gap * scale * 10) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    if (hi < 0) throw NotAnEigenvector("lambda is not near the spectrum");
    // extend through small gaps
    while (lo > 0 && es.values(lo) - es.values(lo - 1) <= tol.gap * scale) --lo;
    while (hi + 1 < n && es.values(hi + 1) - es.values(hi) <= tol.gap * scale) ++hi;

    v.counting = hi + 1;
    v.multiplicity = hi - lo + 1;
    for (auto [i, j] : a.graph().edges())
        if (a.entry(i, j) * phi(i - 1) * phi(j - 1) > 0) ++v.nu;
    v.holds = v.nu >= v.counting - 1;
    return v;
}

} // namespace nodal
