#include "nodal/construct.hpp"
#include "nodal/errors.hpp"
#include "nodal/sampling.hpp"
#include "nodal/transversal.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace nodal {

namespace {

long long choose2(long long m) { return m * (m - 1) / 2; }

ConstructionResult finish(SupportedMatrix matrix, std::optional<long long> target,
                          const Tolerances& tol) {
    EigenSystem es = jacobi_eigensystem(matrix.entries());
    NccReport ncc = check_ncc(matrix, es, tol.gap, tol.zero);
    NodalReport rep = nodal_counts(matrix, es.vectors, tol.zero);
    long long achieved = rep.total;
    return {std::move(matrix), es.vectors, target, achieved, std::move(ncc), std::move(rep)};
}

} // namespace

DenseGraphSpec extremizer_graph_dense(int n, int beta) {
    if (n <= 2 || beta < 1 || beta > choose2(n - 1))
        throw OutOfRange("extremizer_graph_dense requires n > 2, 0 < beta <= C(n-1,2)");
    int m = 3;
    while (choose2(m - 1) < beta) ++m;
    int l = static_cast<int>(choose2(m - 1) - beta);

    std::vector<Edge> edges;
    for (int i = l + 2; i <= m; ++i) edges.push_back({1, i});
    for (int i = 2; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) edges.push_back({i, j});
    for (int i = m; i < n; ++i) edges.push_back({i, i + 1});
    return {Graph(n, std::move(edges)), m, l};
}

DenseBlock dense_block_matrix(int n, int beta) {
    if (n <= 2 || beta <= choose2(n - 2) || beta > choose2(n - 1))
        throw OutOfRange("dense_block_matrix requires C(n-2,2) < beta <= C(n-1,2)");
    const int l = static_cast<int>(choose2(n - 1) - beta);
    const double C = static_cast<double>(choose2(n));
    const double nm1 = n - 1;

    // block sizes 1, l, n-l-1 over indices {0}, {1..l}, {l+1..n-1}
    Mat a = Mat::Zero(n, n);
    a(0, 0) = nm1 * nm1 * nm1 - l * choose2(n - 1);
    for (int i = l + 1; i < n; ++i) a(0, i) = a(i, 0) = -nm1 * choose2(n - 1);
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) a(i, j) = (i == j ? nm1 * C : 0.0) - (n - l - 1);
    for (int i = 1; i <= l; ++i)
        for (int j = l + 1; j < n; ++j) a(i, j) = a(j, i) = -(C - l);
    for (int i = l + 1; i < n; ++i)
        for (int j = l + 1; j < n; ++j) a(i, j) = (i == j ? C * C : 0.0) - (nm1 * nm1 - l);

    Mat basis(n, n);
    Vec values(n);
    values(0) = l * C;
    basis(0, 0) = (n - 2) / static_cast<double>(n);
    for (int i = 1; i < n; ++i) basis(i, 0) = 2.0 / n;
    for (int k = 2; k <= n; ++k) {
        values(k - 1) = (k <= l + 1) ? nm1 * C : C * C;
        basis(0, k - 1) = nm1 / C;
        for (int i = 1; i < n; ++i) basis(i, k - 1) = (1.0 - (i == k - 1 ? C : 0.0)) / C;
    }

    DenseGraphSpec spec = extremizer_graph_dense(n, beta);
    return {SupportedMatrix(spec.graph, std::move(a), SupportMode::GeneralDiagonal),
            std::move(basis), std::move(values)};
}

SupportedMatrix glue(const SupportedMatrix& a1, const SupportedMatrix& a2, double shift,
                     double eps) {
    const int n1 = a1.n(), n2 = a2.n();
    if (static_cast<int>(a1.graph().neighbors(n1).size()) != n1 - 1)
        throw FullDegreeMissing("vertex n1 of the first graph must have full degree");
    if ((a1.entries().array() > 0).any() || (a2.entries().array() > 0).any())
        throw PositivityViolation("glue requires entrywise non-positive inputs");

    std::vector<Edge> edges(a1.graph().edges());
    for (auto [i, j] : a2.graph().edges()) edges.push_back({i + n1, j + n1});
    edges.push_back({n1, n1 + 1});
    Graph g(n1 + n2, std::move(edges));

    Mat m = Mat::Zero(n1 + n2, n1 + n2);
    m.topLeftCorner(n1, n1) = a1.entries() - shift * Mat::Identity(n1, n1);
    m.bottomRightCorner(n2, n2) = a2.entries();
    m(n1 - 1, n1) = m(n1, n1 - 1) = -eps;
    return SupportedMatrix(std::move(g), std::move(m), SupportMode::GeneralDiagonal);
}

ConstructionResult auto_glue(const SupportedMatrix& a1, const SupportedMatrix& a2,
                             const Tolerances& tol) {
    EigenSystem e1 = jacobi_eigensystem(a1.entries());
    EigenSystem e2 = jacobi_eigensystem(a2.entries());
    const long long nu1 = nodal_counts(a1, e1.vectors, tol.zero).total;
    const long long nu2 = nodal_counts(a2, e2.vectors, tol.zero).total;
    const long long want = nu1 + nu2 + static_cast<long long>(a1.n()) * a2.n();

    double margin = a2.n() > 1 ? e2.min_gap() : 1.0;
    double s0 = 2.0 * (e1.norm() + e2.norm());
    if (s0 == 0) s0 = 1.0;

    for (int i = 0; i < 20; ++i) {
        double s = s0 * std::pow(2.0, i);
        // every eigenvalue of A1 - sI must sit below -rho(A2) with margin
        if (e1.values.maxCoeff() - s >= -e2.norm() - margin) continue;
        for (int t = 0; t < 40; ++t) {
            double eps = std::pow(0.5, t);
            ConstructionResult r = finish(glue(a1, a2, s, eps), want, tol);
            if (r.ncc.satisfied && r.achieved_total == want) return r;
        }
    }
    throw SearchExhausted("auto_glue budget exhausted");
}

namespace {

SupportedMatrix random_nonpositive_path_matrix(int n, std::uint64_t seed,
                                               const Tolerances& tol) {
    Graph g = path_graph(n);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Rng rng(mix_seed(seed, "path-" + std::to_string(attempt)));
        std::normal_distribution<double> normal(0.0, 1.0);
        Mat m = Mat::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i)
            m(i, i + 1) = m(i + 1, i) = -(std::abs(normal(rng)) + 0.25);
        for (int i = 0; i < n; ++i) m(i, i) = -(std::abs(normal(rng)) + 0.25);
        SupportedMatrix sm(g, std::move(m), SupportMode::GeneralDiagonal);
        EigenSystem es = jacobi_eigensystem(sm.entries());
        if (check_ncc(sm, es, tol.gap, tol.zero).satisfied) return sm;
    }
    throw ParameterSearchFailed("no NCC path matrix found");
}

} // namespace

ConstructionResult construct_dense_extremizer(int n, int beta, const Tolerances& tol) {
    DenseGraphSpec spec = extremizer_graph_dense(n, beta);
    const int m = spec.m;
    DenseBlock db = dense_block_matrix(m, beta);

    SupportSubspace w{SupportKind::SG, db.matrix.graph()};
    double gap = 1e-6 * db.values.cwiseAbs().maxCoeff();
    RepairResult rep = [&] {
        for (int shrink = 0;; ++shrink, gap *= 0.1) {
            try {
                return transversal_repair(db.matrix.entries(), db.basis, db.values, w, gap, tol);
            } catch (const NewtonStalled&) {
                if (shrink >= 3) throw;
            }
        }
    }();

    SupportedMatrix repaired(db.matrix.graph(), rep.matrix, SupportMode::GeneralDiagonal);
    const long long clique_total = choose2(m) + beta;
    ConstructionResult stage = finish(std::move(repaired), clique_total, tol);
    if (!stage.ncc.satisfied || stage.achieved_total != clique_total)
        throw ParameterSearchFailed("dense repair missed the target count");
    if (m == n) return stage;

    double shift = stage.matrix.entries().diagonal().maxCoeff() + 1.0;
    Mat shifted = stage.matrix.entries() - shift * Mat::Identity(m, m);
    SupportedMatrix a1(stage.matrix.graph(), std::move(shifted), SupportMode::GeneralDiagonal);
    SupportedMatrix a2 = random_nonpositive_path_matrix(
        n - m, mix_seed(0x9e3779b97f4a7c15ull, "dense-" + std::to_string(n) + "-" + std::to_string(beta)),
        tol);

    ConstructionResult glued = auto_glue(a1, a2, tol);
    const long long want = choose2(n) + beta;
    if (glued.achieved_total != want)
        throw ParameterSearchFailed("glued extremizer missed the target count");
    glued.target_total = want;
    return glued;
}

namespace {

struct LadderParams {
    double eps0 = 2.0;
    double ratio = 0.9;
    int eps_steps = 40;
    int delta_steps = 9;
};

// Sign pattern xi_k: alternating below the peak, +1 from the peak on.
int xi_sign(int k, int l) { return l < k ? ((k - l) % 2 ? -1 : 1) : 1; }

bool matches_pattern(const Mat& vectors, int col, int anchor_row,
                     const std::vector<int>& pattern) {
    double a = vectors(anchor_row, col);
    if (a == 0) return false;
    double flip = (a > 0) == (pattern[anchor_row] > 0) ? 1.0 : -1.0;
    for (int i = 0; i < vectors.rows(); ++i) {
        double x = flip * vectors(i, col);
        if (x == 0 || (x > 0) != (pattern[i] > 0)) return false;
    }
    return true;
}

} // namespace

ConstructionResult path_extremizer(int n, int beta, double eps, double delta,
                                   const Tolerances& tol) {
    if (n < 2 || beta < 0 || beta > std::max(0, n - 2))
        throw OutOfRange("path_extremizer requires 0 <= beta <= n-2");

    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    for (int i = 1; i <= beta; ++i) edges.push_back({i, i + 2});
    Graph h(n, edges);

    auto build = [&](double e, double d) {
        Mat m = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = i + 1;
        for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -(e + d);
        for (int i = 1; i <= beta; ++i) m(i - 1, i + 1) = m(i + 1, i - 1) = -d;
        return SupportedMatrix(h, std::move(m), SupportMode::GeneralDiagonal);
    };

    const long long want = choose2(n) + beta;
    auto attempt = [&](double e, double d) -> std::optional<ConstructionResult> {
        ConstructionResult r = finish(build(e, d), want, tol);
        if (!r.ncc.satisfied || r.achieved_total != want) return std::nullopt;
        for (int k = 0; k < n; ++k) {
            std::vector<int> pattern(n);
            for (int l = 0; l < n; ++l) pattern[l] = xi_sign(k, l);
            if (!matches_pattern(r.basis, k, n - 1, pattern)) return std::nullopt;
        }
        for (int i = 1; i <= beta; ++i)
            if (r.report.per_edge.at({i, i + 2}) != 1) return std::nullopt;
        return r;
    };

    LadderParams lp;
    if (eps > 0 && delta > 0)
        if (auto r = attempt(eps, delta)) return *r;
    if (eps > 0) lp.eps0 = eps;
    for (int t = 0; t < lp.eps_steps; ++t) {
        double e = lp.eps0 * std::pow(lp.ratio, t);
        for (int s = 0; s < lp.delta_steps; ++s) {
            double d = e / std::pow(2.0, 6 + 3 * s);
            if (auto r = attempt(e, d)) return *r;
        }
    }
    throw ParameterSearchFailed("path_extremizer parameter ladder exhausted");
}

SupportedMatrix zero_diag_path_inner(int n, double eps) {
    const int nn = 2 * n;
    Mat m = Mat::Zero(nn, nn);
    for (int i = 0; i < n; ++i) {
        double u = -(n - i);
        m(2 * i, 2 * i + 1) = m(2 * i + 1, 2 * i) = u;
    }
    for (int i = 0; i + 1 < nn; ++i) {
        m(i, i + 1) -= eps;
        m(i + 1, i) = m(i, i + 1);
    }
    return SupportedMatrix(path_graph(nn), std::move(m), SupportMode::ZeroDiagonal);
}

std::pair<SupportedMatrix, double> zero_diag_path_inner_auto(int n, const Tolerances& tol) {
    for (int t = 0; t < 40; ++t) {
        double eps = 2.0 * std::pow(0.9, t);
        SupportedMatrix m = zero_diag_path_inner(n, eps);
        EigenSystem es = jacobi_eigensystem(m.entries());
        if (!check_ncc(m, es, tol.gap, tol.zero).satisfied) continue;
        if (es.values.cwiseAbs().minCoeff() <= 1e-6 * (1 + es.norm())) continue;
        return {std::move(m), eps};
    }
    throw ParameterSearchFailed("no NCC inner path matrix found");
}

ConstructionResult zero_diag_path_extremizer(int n, int beta, double eps, double delta,
                                             const Tolerances& tol) {
    if (n < 2 || beta < 0 || beta > 2 * (n - 2))
        throw OutOfRange("zero_diag_path_extremizer requires 0 <= beta <= 2(n-2)");
    const int nn = 2 * n;

    std::vector<Edge> edges;
    for (int i = 1; i < nn; ++i) edges.push_back({i, i + 1});
    for (int i = 1; i <= beta; ++i) edges.push_back({i, i + 4});
    Graph h(nn, edges);

    auto build = [&](double e, double d) {
        Mat m = zero_diag_path_inner(n, e).entries();
        for (int i = 0; i + 1 < nn; ++i) {
            m(i, i + 1) -= d;
            m(i + 1, i) = m(i, i + 1);
        }
        for (int i = 1; i <= beta; ++i) {
            m(i - 1, i + 3) = m(i + 3, i - 1) = -d;
        }
        return SupportedMatrix(h, std::move(m), SupportMode::ZeroDiagonal);
    };

    const long long want = choose2(nn) + 2 * beta;
    auto attempt = [&](double e, double d) -> std::optional<ConstructionResult> {
        // the inner matrix is bipartite with zero diagonal, so its spectrum
        // must be exactly symmetric; verify before coupling in the chords
        EigenSystem inner = jacobi_eigensystem(zero_diag_path_inner(n, e).entries());
        for (int k = 0; k < nn; ++k)
            if (std::abs(inner.values(k) + inner.values(nn - 1 - k)) >
                1e-10 * (1 + inner.norm()))
                return std::nullopt;

        ConstructionResult r = finish(build(e, d), want, tol);
        if (!r.ncc.satisfied || r.achieved_total != want) return std::nullopt;
        for (int k = 0; k < n; ++k) {
            std::vector<int> low(nn), high(nn);
            for (int l = 0; l < n; ++l) {
                int xi = xi_sign(k, l);
                low[2 * l] = xi;
                low[2 * l + 1] = xi;
                high[2 * l] = xi;
                high[2 * l + 1] = -xi;
            }
            if (!matches_pattern(r.basis, k, nn - 2, low)) return std::nullopt;
            if (!matches_pattern(r.basis, nn - 1 - k, nn - 2, high)) return std::nullopt;
        }
        for (int i = 1; i <= beta; ++i)
            if (r.report.per_edge.at({i, i + 4}) != 2) return std::nullopt;
        return r;
    };

    LadderParams lp;
    if (eps > 0 && delta > 0)
        if (auto r = attempt(eps, delta)) return *r;
    if (eps > 0) lp.eps0 = eps;
    for (int t = 0; t < lp.eps_steps; ++t) {
        double e = lp.eps0 * std::pow(lp.ratio, t);
        for (int s = 0; s < lp.delta_steps; ++s) {
            double d = e / std::pow(2.0, 6 + 3 * s);
            if (auto r = attempt(e, d)) return *r;
        }
    }
    throw ParameterSearchFailed("zero_diag_path_extremizer parameter ladder exhausted");
}

ConstructionResult kn_zero_diag(int n, double eps, const Tolerances& tol) {
    if (n <= 2) throw OutOfRange("kn_zero_diag requires n > 2");
    Graph kn = complete_graph(n);
    const long long want = static_cast<long long>(n - 1) * (n - 1);

    auto attempt = [&](double e) -> std::optional<ConstructionResult> {
        double a = (1 + 9 * e * e / (4 + e * e)) / (2 * std::sqrt(2.0));
        double b = (1 - 9 * e * e / (8 + 2 * e * e)) * std::sqrt(2.0);
        Mat ae = Mat::Zero(n, n);
        ae(0, 0) = ae(1, 1) = e * e;
        ae(0, 1) = ae(1, 0) = 1 - e * e;
        for (int i = 2; i < n; ++i) {
            ae(0, i) = ae(i, 0) = a * e;
            ae(1, i) = ae(i, 1) = b * e;
            for (int j = 2; j < n; ++j) ae(i, j) = e * e;
        }
        ae = -ae;

        Vec x(n);
        x(0) = (8 - e * e) * (n - 2) * e;
        x(1) = (2 - e * e) * (n - 2) * e;
        for (int i = 2; i < n; ++i) x(i) = -std::sqrt(2.0) * (4 + e * e);

        EigenSystem es = jacobi_eigensystem(ae);
        // rank two with x in the nullspace
        int zero_count = 0;
        for (int k = 0; k < n; ++k)
            if (std::abs(es.values(k)) <= 1e-10 * (1 + es.norm())) ++zero_count;
        if (zero_count != n - 2) return std::nullopt;
        if ((ae * x).norm() > 1e-10 * (1 + es.norm()) * x.norm()) return std::nullopt;
        if (es.values(0) >= -1e-6 || es.values(n - 1) <= 1e-6) return std::nullopt;

        Mat ap = ae - Mat::Identity(n, n);
        EigenSystem esp = jacobi_eigensystem(ap);

        Mat basis(n, n);
        basis.col(0) = esp.vectors.col(0);
        for (int k = 2; k <= n - 1; ++k) {
            Vec u = Vec::Ones(n);
            u(0) = u(1) = 0;
            u(k) -= (n - 2);  // e_{k-1} within the tail block is global index k
            Vec v = x + x.norm() / std::sqrt(static_cast<double>(n - 2)) * u;
            basis.col(k - 1) = v / v.norm();
        }
        basis.col(n - 1) = esp.vectors.col(n - 1);

        if ((basis.transpose() * basis - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
            return std::nullopt;

        SupportedMatrix sm(kn, ap, SupportMode::GeneralDiagonal);
        NodalReport rep = nodal_counts(sm, basis, tol.zero);
        if (rep.total != want) return std::nullopt;
        NccReport ncc = check_ncc(sm, esp, tol.gap, tol.zero);
        return ConstructionResult{std::move(sm), std::move(basis), want, rep.total,
                                  std::move(ncc), std::move(rep)};
    };

    if (eps > 0)
        if (auto r = attempt(eps)) return *r;
    for (int t = 0; t < 40; ++t)
        if (auto r = attempt(0.1 * std::pow(0.75, t))) return *r;
    throw ParameterSearchFailed("kn_zero_diag parameter ladder exhausted");
}

ConstructionResult odd_cycle_matrix(int len, const Tolerances& tol) {
    if (len < 3 || len % 2 == 0)
        throw WrongGraph("odd_cycle_matrix requires an odd cycle length >= 3");
    const int inner_n = (len - 1) / 2;
    auto [inner, inner_eps] = zero_diag_path_inner_auto(inner_n, tol);
    EigenSystem ies = jacobi_eigensystem(inner.entries());

    const int p = len - 1;  // inner path order
    int c = 1;
    for (;; ++c) {
        bool clash = false;
        for (int k = 0; k < p; ++k) {
            double ratio = -ies.vectors(0, k) / ies.vectors(p - 1, k);
            if (std::abs(c - ratio) < 1e-6 * (1 + std::abs(ratio))) clash = true;
        }
        if (!clash) break;
    }

    Graph cg = cycle_graph(len);
    for (int t = 0; t < 40; ++t) {
        double e2 = 0.5 * std::pow(0.5, t);
        Mat m = Mat::Zero(len, len);
        m.topLeftCorner(p, p) = inner.entries();
        m(0, len - 1) = m(len - 1, 0) = e2;
        m(p - 1, len - 1) = m(len - 1, p - 1) = e2 * c;
        ConstructionResult r =
            finish(SupportedMatrix(cg, std::move(m), SupportMode::ZeroDiagonal), std::nullopt, tol);
        if (r.ncc.satisfied) return r;
    }
    throw ParameterSearchFailed("odd_cycle_matrix coupling ladder exhausted");
}

namespace {

Mat adjugate(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    Mat adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    Mat minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = a(r, c);
                }
                ++rr;
            }
            double cof = minor.determinant();
            adj(j, i) = ((i + j) % 2 ? -1.0 : 1.0) * cof;
        }
    return adj;
}

} // namespace

ZeroDiagOutcome zero_diag_ncc_matrix(const Graph& g, std::uint64_t seed, int samples,
                                     const Tolerances& tol) {
    ZeroDiagOutcome out;
    out.verdict = classify_determinantal(g);

    if (!out.verdict.determinantal) {
        // sub-determinantal consequence: every sampled S0 matrix is singular
        // and its adjugate vanishes on the edges (Jacobi's formula)
        out.adjugate_vanishes_on_edges = true;
        for (int s = 0; s < samples; ++s) {
            SupportedMatrix a = random_supported_matrix(
                g, SupportMode::ZeroDiagonal, mix_seed(seed, "s0-" + std::to_string(s)));
            EigenSystem es = jacobi_eigensystem(a.entries());
            if (es.values.cwiseAbs().minCoeff() <= 1e-8 * (1 + es.norm()))
                ++out.singular_samples;
            Mat adj = adjugate(a.entries());
            double scale = std::max(1.0, adj.cwiseAbs().maxCoeff());
            for (auto [i, j] : g.edges())
                if (std::abs(adj(i - 1, j - 1)) > 1e-8 * scale)
                    out.adjugate_vanishes_on_edges = false;
        }
        return out;
    }

    const auto& comps = out.verdict.cover.components;
    const int s = static_cast<int>(comps.size());

    // per-component base blocks (unscaled) and vertex lists
    std::vector<Mat> blocks;
    std::vector<std::vector<int>> verts;
    for (const auto& comp : comps) {
        if (const auto* e = std::get_if<CoverEdge>(&comp)) {
            Mat b(2, 2);
            b << 0, 1, 1, 0;
            blocks.push_back(b);
            verts.push_back({e->i, e->j});
        } else {
            const auto& cyc = std::get<CoverCycle>(comp).vertices;
            blocks.push_back(odd_cycle_matrix(static_cast<int>(cyc.size()), tol).matrix.entries());
            verts.push_back(cyc);
        }
    }

    // scale separation: disjoint spectra, and no component may sit on another
    // component's exceptional resolvent shifts
    std::vector<double> scales(s);
    for (int i = 0; i < s; ++i) scales[i] = std::pow(3.0, i);
    std::vector<Vec> specs(s);
    for (int i = 0; i < s; ++i) specs[i] = jacobi_eigensystem(blocks[i]).values;

    for (int attempt = 0; attempt < 8; ++attempt) {
        bool ok = true;
        for (int i = 0; i < s && ok; ++i)
            for (int j = 0; j < s && ok; ++j) {
                if (i == j) continue;
                for (int k = 0; k < specs[j].size() && ok; ++k) {
                    double lam = scales[j] * specs[j](k);
                    double dist = (scales[i] * specs[i].array() - lam).abs().minCoeff();
                    if (dist <= 1e-6 * (1 + std::abs(lam))) ok = false;
                    else if (!resolvent_entrywise_nonzero(scales[i] * blocks[i], lam, tol.zero))
                        ok = false;
                    if (!ok && j > 0) scales[j] *= 1.37;
                    else if (!ok) scales[i] *= 1.37;
                }
            }
        if (ok) break;
        if (attempt == 7) throw ParameterSearchFailed("no exceptional-free scaling found");
    }

    const int n = g.n();
    Mat base = Mat::Zero(n, n);
    std::vector<Edge> cover_edges;
    for (int ci = 0; ci < s; ++ci) {
        const auto& vs = verts[ci];
        for (size_t a = 0; a < vs.size(); ++a)
            for (size_t b = 0; b < vs.size(); ++b)
                base(vs[a] - 1, vs[b] - 1) = scales[ci] * blocks[ci](a, b);
        if (vs.size() == 2) {
            cover_edges.push_back(make_edge(vs[0], vs[1]));
        } else {
            for (size_t a = 0; a < vs.size(); ++a)
                cover_edges.push_back(make_edge(vs[a], vs[(a + 1) % vs.size()]));
        }
    }
    std::sort(cover_edges.begin(), cover_edges.end());

    ConnectingEdges conn = connecting_edge_set(g, out.verdict.cover);
    std::vector<Edge> rest;
    for (auto e : g.edges())
        if (!std::binary_search(cover_edges.begin(), cover_edges.end(), e) &&
            std::find(conn.edges.begin(), conn.edges.end(), e) == conn.edges.end())
            rest.push_back(e);

    for (int t = 0; t < 40; ++t) {
        double eps = 0.5 * std::pow(0.5, t);
        for (int dstep = 0; dstep < 6; ++dstep) {
            double delta = eps / std::pow(2.0, 2 + 3 * dstep);
            Mat m = base;
            for (auto [i, j] : conn.edges) m(i - 1, j - 1) = m(j - 1, i - 1) = eps;
            for (auto [i, j] : rest) m(i - 1, j - 1) = m(j - 1, i - 1) = delta;
            ConstructionResult r =
                finish(SupportedMatrix(g, std::move(m), SupportMode::ZeroDiagonal),
                       std::nullopt, tol);
            EigenSystem es = jacobi_eigensystem(r.matrix.entries());
            if (r.ncc.satisfied &&
                es.values.cwiseAbs().minCoeff() > 1e-8 * (1 + es.norm())) {
                out.construction = std::move(r);
                return out;
            }
            if (rest.empty()) break;
        }
    }
    throw ParameterSearchFailed("zero_diag_ncc_matrix coupling ladder exhausted");
}

} // namespace nodal
