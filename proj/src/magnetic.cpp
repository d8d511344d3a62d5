#include "nodal/magnetic.hpp"
#include "nodal/errors.hpp"

#include <cmath>

namespace nodal {

namespace {

// [[Re, -Im], [Im, Re]] for A_theta; Im is antisymmetric so the embedding
// is symmetric and its spectrum doubles each eigenvalue of A_theta.
Mat embedding(const SupportedMatrix& a, const SpanningTreeFrame& frame,
              const std::vector<double>& theta) {
    const int n = a.n();
    Mat re = a.entries();
    Mat im = Mat::Zero(n, n);
    for (size_t l = 0; l < frame.cotree_edges.size(); ++l) {
        auto [r, s] = frame.cotree_edges[l];
        double v = a.entry(r, s);
        re(r - 1, s - 1) = re(s - 1, r - 1) = v * std::cos(theta[l]);
        im(r - 1, s - 1) = v * std::sin(theta[l]);
        im(s - 1, r - 1) = -im(r - 1, s - 1);
    }
    Mat e(2 * n, 2 * n);
    e << re, -im, im, re;
    return e;
}

Vec collapse_pairs(const Vec& doubled, double scale) {
    const int n = static_cast<int>(doubled.size()) / 2;
    Vec out(n);
    for (int k = 0; k < n; ++k) {
        double lo = doubled(2 * k), hi = doubled(2 * k + 1);
        if (std::abs(hi - lo) > 1e-8 * scale)
            throw PairingFailure("embedding spectrum failed to pair");
        out(k) = 0.5 * (lo + hi);
    }
    return out;
}

} // namespace

Vec magnetic_eigenvalues(const MagneticFrame& mf) {
    if (mf.theta.size() != mf.frame.cotree_edges.size())
        throw DimensionMismatch("theta dimension must equal the first Betti number");
    if (mf.theta.empty()) return jacobi_eigensystem(mf.base.entries()).values;
    EigenSystem es = jacobi_eigensystem(embedding(mf.base, mf.frame, mf.theta));
    return collapse_pairs(es.values, 1.0 + es.norm());
}

namespace {

void require_tracking_gap(const EigenSystem& es, double h) {
    double scale = 1.0 + es.norm();
    // lambda moves O(h^2) near the critical point; demand clear separation
    if (es.min_gap() <= 10 * h * h * scale)
        throw GapTooSmall("eigenvalue ordering ambiguous at this step size");
}

struct FdGrid {
    // lambda vectors at the stencil points for one step size
    Vec center;
    std::vector<Vec> diag_p, diag_m;                 // +-h e_l
    std::vector<std::vector<Vec>> cross_pp, cross_pm, cross_mp, cross_mm;

    FdGrid(const SupportedMatrix& a, const SpanningTreeFrame& frame, int b, double h) {
        auto at = [&](const std::vector<double>& theta) {
            return magnetic_eigenvalues({a, frame, theta});
        };
        center = at(std::vector<double>(b, 0.0));
        diag_p.resize(b);
        diag_m.resize(b);
        for (int l = 0; l < b; ++l) {
            std::vector<double> t(b, 0.0);
            t[l] = h;
            diag_p[l] = at(t);
            t[l] = -h;
            diag_m[l] = at(t);
        }
        auto grid2 = [&](double sl, double sm) {
            std::vector<std::vector<Vec>> g(b, std::vector<Vec>(b));
            for (int l = 0; l < b; ++l)
                for (int m = l + 1; m < b; ++m) {
                    std::vector<double> t(b, 0.0);
                    t[l] = sl * h;
                    t[m] = sm * h;
                    g[l][m] = at(t);
                }
            return g;
        };
        cross_pp = grid2(1, 1);
        cross_pm = grid2(1, -1);
        cross_mp = grid2(-1, 1);
        cross_mm = grid2(-1, -1);
    }

    Mat hessian(int k, int b, double h) const {
        Mat hess(b, b);
        for (int l = 0; l < b; ++l)
            hess(l, l) = (diag_p[l](k) - 2 * center(k) + diag_m[l](k)) / (h * h);
        for (int l = 0; l < b; ++l)
            for (int m = l + 1; m < b; ++m)
                hess(l, m) = hess(m, l) = (cross_pp[l][m](k) - cross_pm[l][m](k) -
                                           cross_mp[l][m](k) + cross_mm[l][m](k)) /
                                          (4 * h * h);
        return hess;
    }

    Vec gradient(int k, int b, double h) const {
        Vec g(b);
        for (int l = 0; l < b; ++l) g(l) = (diag_p[l](k) - diag_m[l](k)) / (2 * h);
        return g;
    }
};

} // namespace

FdBatch fd_batch(const SupportedMatrix& a, const SpanningTreeFrame& frame, double h) {
    const int beta = static_cast<int>(frame.cotree_edges.size());
    const int n = a.n();
    FdBatch out;
    if (beta == 0) {
        out.hessians.assign(n, Mat::Zero(0, 0));
        out.gradients.assign(n, Vec::Zero(0));
        return out;
    }
    EigenSystem es = jacobi_eigensystem(a.entries());
    require_tracking_gap(es, h);
    FdGrid coarse(a, frame, beta, h);
    FdGrid fine(a, frame, beta, h / 2);
    for (int k = 0; k < n; ++k) {
        Mat hess = (4.0 * fine.hessian(k, beta, h / 2) - coarse.hessian(k, beta, h)) / 3.0;
        out.hessians.push_back(0.5 * (hess + hess.transpose().eval()));
        out.gradients.push_back((4.0 * fine.gradient(k, beta, h / 2) -
                                 coarse.gradient(k, beta, h)) / 3.0);
    }
    return out;
}

Mat hessian_fd(const SupportedMatrix& a, const SpanningTreeFrame& frame, int k, double h) {
    if (frame.cotree_edges.empty()) return Mat::Zero(0, 0);
    return fd_batch(a, frame, h).hessians.at(k);
}

Vec gradient_fd(const SupportedMatrix& a, const SpanningTreeFrame& frame, int k, double h) {
    if (frame.cotree_edges.empty()) return Vec::Zero(0);
    return fd_batch(a, frame, h).gradients.at(k);
}

Mat hessian_perturbative(const SupportedMatrix& a, const EigenSystem& es,
                         const SpanningTreeFrame& frame, int k) {
    const int n = a.n();
    const int beta = static_cast<int>(frame.cotree_edges.size());
    if (beta == 0) return Mat::Zero(0, 0);

    double scale = 1.0 + es.norm();
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, es.values(k) - es.values(k - 1));
    if (k + 1 < n) gap = std::min(gap, es.values(k + 1) - es.values(k));
    if (gap <= 1e-12 * scale)
        throw DegenerateEigenvalue("lambda_k is not numerically simple");

    // g(l, j) = <phi_j, dA/dtheta_l phi_k> / i  (real pairing)
    Mat g(beta, n);
    for (int l = 0; l < beta; ++l) {
        auto [r, s] = frame.cotree_edges[l];
        double w = a.entry(r, s);
        for (int j = 0; j < n; ++j)
            g(l, j) = w * (es.vectors(r - 1, j) * es.vectors(s - 1, k) -
                           es.vectors(s - 1, j) * es.vectors(r - 1, k));
    }

    Mat hess = Mat::Zero(beta, beta);
    for (int l = 0; l < beta; ++l) {
        auto [r, s] = frame.cotree_edges[l];
        hess(l, l) = -2.0 * a.entry(r, s) * es.vectors(r - 1, k) * es.vectors(s - 1, k);
    }
    for (int l = 0; l < beta; ++l)
        for (int m = l; m < beta; ++m) {
            double acc = 0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                acc += g(l, j) * g(m, j) / (es.values(k) - es.values(j));
            }
            hess(l, m) += 2.0 * acc;
            if (m != l) hess(m, l) = hess(l, m);
        }
    return hess;
}

HessianStack build_hessian_stack(const SupportedMatrix& a, const EigenSystem& es,
                                 const SpanningTreeFrame& frame, HessianMethod method,
                                 const Tolerances& tol) {
    HessianStack st;
    st.method = method;
    const double tol_hess = tol.hess * (1.0 + es.norm());
    for (int k = 0; k < a.n(); ++k) {
        Mat h = method == HessianMethod::Perturbative
                    ? hessian_perturbative(a, es, frame, k)
                    : hessian_fd(a, frame, k, tol.fd_step);
        EigenSystem hes = jacobi_eigensystem(h);
        int morse = 0, strict = 0;
        bool degen = false;
        for (int i = 0; i < hes.values.size(); ++i) {
            if (hes.values(i) < -tol_hess) ++morse;
            if (hes.values(i) < 0) ++strict;
            if (std::abs(hes.values(i)) <= tol_hess) degen = true;
        }
        st.hessians.push_back(std::move(h));
        st.morse_indices.push_back(morse);
        st.strict_indices.push_back(strict);
        st.degenerate.push_back(degen);
    }
    return st;
}

MorseVerdict morse_verify(const SupportedMatrix& a, const EigenSystem& es,
                          const SpanningTreeFrame& frame, const NodalReport& report,
                          const Tolerances& tol) {
    HessianStack st = build_hessian_stack(a, es, frame, HessianMethod::Perturbative, tol);
    MorseVerdict v;
    v.all_match = true;
    for (int k = 0; k < a.n(); ++k) {
        bool match = st.morse_indices[k] == report.surpluses[k];
        if (!match && st.degenerate[k])
            match = st.strict_indices[k] == report.surpluses[k];
        v.per_k.push_back(match);
        v.degenerate.push_back(st.degenerate[k]);
        if (st.degenerate[k]) ++v.flagged;
        if (!match) v.all_match = false;
    }
    return v;
}

} // namespace nodal
