#ifndef NODAL_GRAPH_HPP
#define NODAL_GRAPH_HPP

#include <optional>
#include <utility>
#include <vector>

namespace nodal {

// Undirected edge with 1-based endpoints, stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int i, int j) { return i < j ? Edge{i, j} : Edge{j, i}; }

// Simple connected undirected graph on vertices 1..n.
// Edges are normalized (i < j) and kept sorted lexicographically.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int i, int j) const;

    // Neighbors of v in increasing label order.
    const std::vector<int>& neighbors(int v) const { return adj_[v - 1]; }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

struct SpanningTreeFrame {
    std::vector<Edge> tree_edges;    // n-1 edges of the BFS tree
    std::vector<Edge> cotree_edges;  // beta edges, lexicographic
};

// betti(g) = |E| - n + 1
int betti(const Graph& g);

// Deterministic BFS tree rooted at vertex 1, neighbors in increasing order.
SpanningTreeFrame spanning_frame(const Graph& g);

// Two-coloring u in {-1,+1}^n with u_i u_j = -1 on every edge, or nullopt.
std::optional<std::vector<int>> bipartition(const Graph& g);

// Convenience builders used throughout the tests and constructions.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int n);  // vertex 1 joined to 2..n

} // namespace nodal

#endif
