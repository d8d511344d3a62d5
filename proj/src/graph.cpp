#include "nodal/graph.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace nodal {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw InvalidGraph("vertex count must be >= 1");
    for (auto& [i, j] : edges_) {
        if (i > j) std::swap(i, j);
        if (i < 1 || j > n_) throw InvalidGraph("edge index out of range");
        if (i == j) throw InvalidGraph("self-loop");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw InvalidGraph("duplicate edge");

    adj_.assign(n_, {});
    for (auto [i, j] : edges_) {
        adj_[i - 1].push_back(j);
        adj_[j - 1].push_back(i);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    // connectivity via BFS from 1
    std::vector<bool> seen(n_, false);
    std::queue<int> q;
    q.push(1);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj_[v - 1])
            if (!seen[w - 1]) {
                seen[w - 1] = true;
                ++reached;
                q.push(w);
            }
    }
    if (reached != n_) throw InvalidGraph("graph is disconnected");
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    Edge e = make_edge(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

int betti(const Graph& g) { return g.edge_count() - g.n() + 1; }

SpanningTreeFrame spanning_frame(const Graph& g) {
    std::vector<bool> seen(g.n(), false);
    std::queue<int> q;
    q.push(1);
    seen[0] = true;
    std::vector<Edge> tree;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (!seen[w - 1]) {
                seen[w - 1] = true;
                tree.push_back(make_edge(v, w));
                q.push(w);
            }
    }
    std::sort(tree.begin(), tree.end());
    std::vector<Edge> cotree;
    std::set_difference(g.edges().begin(), g.edges().end(), tree.begin(), tree.end(),
                        std::back_inserter(cotree));
    return {std::move(tree), std::move(cotree)};
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> color(g.n(), 0);
    std::queue<int> q;
    q.push(1);
    color[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v)) {
            if (color[w - 1] == 0) {
                color[w - 1] = -color[v - 1];
                q.push(w);
            } else if (color[w - 1] == color[v - 1]) {
                return std::nullopt;
            }
        }
    }
    return color;
}

Graph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
    if (n < 3) throw InvalidGraph("cycle needs n >= 3");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    e.push_back({1, n});
    return Graph(n, std::move(e));
}

Graph complete_graph(int n) {
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
    return Graph(n, std::move(e));
}

Graph star_graph(int n) {
    std::vector<Edge> e;
    for (int j = 2; j <= n; ++j) e.push_back({1, j});
    return Graph(n, std::move(e));
}

} // namespace nodal
