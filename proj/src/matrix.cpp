#include "nodal/matrix.hpp"
#include "nodal/errors.hpp"

#include <string>

namespace nodal {

SupportedMatrix::SupportedMatrix(Graph graph, Mat entries, SupportMode mode)
    : graph_(std::move(graph)), entries_(std::move(entries)), mode_(mode) {
    const int n = graph_.n();
    if (entries_.rows() != n || entries_.cols() != n)
        throw DimensionMismatch("matrix size does not match graph order");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (entries_(i, j) != entries_(j, i))
                throw InvalidGraph("matrix is not exactly symmetric");
            if (entries_(i, j) != 0.0 && !graph_.has_edge(i + 1, j + 1))
                throw InvalidGraph("nonzero entry off the support at (" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    if (mode_ == SupportMode::ZeroDiagonal)
        for (int i = 0; i < n; ++i)
            if (entries_(i, i) != 0.0)
                throw InvalidGraph("zero-diagonal mode with nonzero diagonal entry");
}

bool SupportedMatrix::strictly_supported() const {
    for (auto [i, j] : graph_.edges())
        if (entries_(i - 1, j - 1) == 0.0) return false;
    return true;
}

Graph support_graph(const Mat& entries) {
    const int n = static_cast<int>(entries.rows());
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (entries(i, j) != 0.0) edges.push_back({i + 1, j + 1});
    return Graph(n, std::move(edges));
}

} // namespace nodal
