#include "nodal/sampling.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <set>

namespace nodal {

std::uint64_t mix_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h ^ master;
}

SupportedMatrix random_supported_matrix(const Graph& g, SupportMode mode, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat a = Mat::Zero(g.n(), g.n());
    for (auto [i, j] : g.edges()) a(i - 1, j - 1) = a(j - 1, i - 1) = normal(rng);
    if (mode == SupportMode::GeneralDiagonal)
        for (int i = 0; i < g.n(); ++i) a(i, i) = normal(rng);
    return SupportedMatrix(g, std::move(a), mode);
}

SupportedMatrix random_supported_matrix(const Graph& g, SupportMode mode, std::uint64_t seed) {
    Rng rng(seed);
    return random_supported_matrix(g, mode, rng);
}

Graph random_tree(int n, Rng& rng) {
    std::vector<Edge> edges;
    for (int v = 2; v <= n; ++v) {
        int u = static_cast<int>(rng() % (v - 1)) + 1;
        edges.push_back(make_edge(u, v));
    }
    return Graph(n, std::move(edges));
}

Graph random_connected_graph(int n, int extra_edges, Rng& rng) {
    Graph tree = random_tree(n, rng);
    std::set<Edge> have(tree.edges().begin(), tree.edges().end());
    std::vector<Edge> pool;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!have.count({i, j})) pool.push_back({i, j});
    std::shuffle(pool.begin(), pool.end(), rng);
    int take = std::min<int>(extra_edges, static_cast<int>(pool.size()));
    std::vector<Edge> edges(tree.edges());
    edges.insert(edges.end(), pool.begin(), pool.begin() + take);
    return Graph(n, std::move(edges));
}

Graph random_bipartite_matched_graph(int n, int extra_edges, Rng& rng) {
    if (n % 2 != 0) throw OutOfRange("even vertex count required");
    // parts: odd labels vs even labels; matching edges (2i-1, 2i)
    std::vector<Edge> edges;
    for (int i = 1; i <= n / 2; ++i) edges.push_back({2 * i - 1, 2 * i});
    // connect consecutive matched pairs to keep the graph connected
    for (int i = 1; i < n / 2; ++i) edges.push_back(make_edge(2 * i, 2 * i + 1));
    std::set<Edge> have(edges.begin(), edges.end());
    std::vector<Edge> pool;
    for (int i = 1; i <= n; i += 2)
        for (int j = 2; j <= n; j += 2)
            if (i != j && !have.count(make_edge(i, j))) pool.push_back(make_edge(i, j));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    int take = std::min<int>(extra_edges, static_cast<int>(pool.size()));
    edges.insert(edges.end(), pool.begin(), pool.begin() + take);
    return Graph(n, std::move(edges));
}

} // namespace nodal
