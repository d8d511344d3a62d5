#ifndef NODAL_MATRIX_HPP
#define NODAL_MATRIX_HPP

#include "nodal/graph.hpp"

#include <Eigen/Dense>

namespace nodal {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class SupportMode { GeneralDiagonal, ZeroDiagonal };

// Dense real symmetric matrix paired with its support graph.
// Invariants enforced at construction: exact symmetry, zeros on non-edges,
// zero diagonal when mode is ZeroDiagonal.
class SupportedMatrix {
public:
    SupportedMatrix(Graph graph, Mat entries, SupportMode mode);

    const Graph& graph() const { return graph_; }
    const Mat& entries() const { return entries_; }
    SupportMode mode() const { return mode_; }
    int n() const { return graph_.n(); }

    double entry(int i, int j) const { return entries_(i - 1, j - 1); }  // 1-based
    bool strictly_supported() const;

private:
    Graph graph_;
    Mat entries_;
    SupportMode mode_;
};

// Support graph inferred from the nonzero off-diagonal pattern.
Graph support_graph(const Mat& entries);

} // namespace nodal

#endif
