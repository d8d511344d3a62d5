#include "nodal/eigensolve.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nodal {

namespace {

double offdiag_norm2(const Mat& a) {
    double s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return s;
}

} // namespace

EigenSystem jacobi_eigensystem(const Mat& input) {
    const int n = static_cast<int>(input.rows());
    Mat a = input;
    Mat v = Mat::Identity(n, n);

    const double fro2 = a.squaredNorm();
    const double stop = 1e-30 * (fro2 > 0 ? fro2 : 1.0);

    for (int sweep = 0; sweep < 64; ++sweep) {
        if (offdiag_norm2(a) <= stop) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        if (sweep == 63 && offdiag_norm2(a) > 1e-18 * (fro2 > 0 ? fro2 : 1.0))
            throw NumericalFailure("jacobi sweep limit reached without convergence");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        es.values(k) = a(order[k], order[k]);
        es.vectors.col(k) = v.col(order[k]);
        // sign convention: first entry with magnitude > 1e-9 positive
        for (int i = 0; i < n; ++i) {
            double x = es.vectors(i, k);
            if (std::abs(x) > 1e-9) {
                if (x < 0) es.vectors.col(k) = -es.vectors.col(k);
                break;
            }
        }
    }
    es.gaps.resize(std::max(n - 1, 0));
    for (int k = 0; k + 1 < n; ++k) es.gaps(k) = es.values(k + 1) - es.values(k);
    return es;
}

Mat shifted_pseudo_inverse(const EigenSystem& es, double shift, double kernel_tol) {
    const int n = static_cast<int>(es.values.size());
    Mat out = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double d = es.values(k) - shift;
        if (std::abs(d) > kernel_tol)
            out += es.vectors.col(k) * es.vectors.col(k).transpose() / d;
    }
    return out;
}

} // namespace nodal
