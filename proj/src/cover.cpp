#include "nodal/cover.hpp"
#include "nodal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace nodal {

void validate_cover(const Graph& g, const CycleCover& cover) {
    std::vector<int> hit(g.n(), 0);
    auto touch = [&](int v) {
        if (v < 1 || v > g.n()) throw InvalidCover("cover vertex out of range");
        if (hit[v - 1]++) throw InvalidCover("cover components overlap");
    };
    for (const auto& comp : cover.components) {
        if (const auto* e = std::get_if<CoverEdge>(&comp)) {
            touch(e->i);
            touch(e->j);
            if (!g.has_edge(e->i, e->j)) throw InvalidCover("cover edge not in graph");
        } else {
            const auto& c = std::get<CoverCycle>(comp).vertices;
            if (c.size() < 3 || c.size() % 2 == 0)
                throw InvalidCover("cover cycle must have odd length >= 3");
            for (size_t t = 0; t < c.size(); ++t) {
                touch(c[t]);
                if (!g.has_edge(c[t], c[(t + 1) % c.size()]))
                    throw InvalidCover("cover cycle edge not in graph");
            }
        }
    }
    for (int v = 1; v <= g.n(); ++v)
        if (!hit[v - 1]) throw InvalidCover("cover misses vertex " + std::to_string(v));
}

namespace {

// Hopcroft-Karp on the bipartite double cover: left copy i matched to right
// copy j iff (ij) is an edge. A perfect matching is a fixed-point-free
// permutation sigma with (i, sigma(i)) in E for every i.
class HopcroftKarp {
public:
    explicit HopcroftKarp(const Graph& g) : g_(g), n_(g.n()) {
        match_l_.assign(n_, -1);
        match_r_.assign(n_, -1);
        // greedy init in label order keeps the result deterministic
        for (int u = 0; u < n_; ++u)
            for (int w : g_.neighbors(u + 1)) {
                int v = w - 1;
                if (match_r_[v] == -1) {
                    match_l_[u] = v;
                    match_r_[v] = u;
                    break;
                }
            }
    }

    bool perfect() {
        int matched = static_cast<int>(std::count_if(match_l_.begin(), match_l_.end(),
                                                     [](int m) { return m >= 0; }));
        while (bfs()) {
            for (int u = 0; u < n_; ++u)
                if (match_l_[u] == -1 && dfs(u)) ++matched;
        }
        return matched == n_;
    }

    const std::vector<int>& matching() const { return match_l_; }

private:
    static constexpr int kInf = 1 << 30;

    bool bfs() {
        std::queue<int> q;
        dist_.assign(n_, kInf);
        for (int u = 0; u < n_; ++u)
            if (match_l_[u] == -1) {
                dist_[u] = 0;
                q.push(u);
            }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g_.neighbors(u + 1)) {
                int m = match_r_[w - 1];
                if (m == -1) {
                    found = true;
                } else if (dist_[m] == kInf) {
                    dist_[m] = dist_[u] + 1;
                    q.push(m);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int w : g_.neighbors(u + 1)) {
            int v = w - 1;
            int m = match_r_[v];
            if (m == -1 || (dist_[m] == dist_[u] + 1 && dfs(m))) {
                match_l_[u] = v;
                match_r_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    const Graph& g_;
    int n_;
    std::vector<int> match_l_, match_r_, dist_;
};

// Rotate smallest label first, then orient toward the smaller neighbor.
std::vector<int> canonical_cycle(std::vector<int> c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    return c;
}

} // namespace

DeterminantalVerdict classify_determinantal(const Graph& g) {
    HopcroftKarp hk(g);
    if (!hk.perfect()) return {};

    const auto& sigma = hk.matching();  // 0-based permutation
    DeterminantalVerdict verdict;
    verdict.determinantal = true;
    std::vector<bool> seen(g.n(), false);
    for (int s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        for (int v = s; !seen[v]; v = sigma[v]) {
            seen[v] = true;
            cyc.push_back(v + 1);
        }
        cyc = canonical_cycle(std::move(cyc));
        if (cyc.size() % 2 == 0) {
            // even permutation cycles are covered by alternating edges
            for (size_t t = 0; t + 1 < cyc.size(); t += 2)
                verdict.cover.components.push_back(CoverEdge{std::min(cyc[t], cyc[t + 1]),
                                                             std::max(cyc[t], cyc[t + 1])});
        } else {
            verdict.cover.components.push_back(CoverCycle{std::move(cyc)});
        }
    }
    // components in a deterministic order
    std::sort(verdict.cover.components.begin(), verdict.cover.components.end(),
              [](const CoverComponent& a, const CoverComponent& b) {
                  auto head = [](const CoverComponent& c) {
                      if (const auto* e = std::get_if<CoverEdge>(&c)) return e->i;
                      return std::get<CoverCycle>(c).vertices.front();
                  };
                  return head(a) < head(b);
              });
    validate_cover(g, verdict.cover);
    return verdict;
}

bool classify_determinantal_brute(const Graph& g) {
    const int n = g.n();
    std::vector<int> sigma(n, -1);
    std::vector<bool> used(n + 1, false);
    // backtracking over images; equivalent to enumerating all fixed-point-free
    // permutations supported on E
    auto dfs = [&](auto&& self, int v) -> bool {
        if (v > n) return true;
        for (int w : g.neighbors(v)) {
            if (!used[w]) {
                used[w] = true;
                sigma[v - 1] = w;
                if (self(self, v + 1)) return true;
                used[w] = false;
            }
        }
        return false;
    };
    return dfs(dfs, 1);
}

ConnectingEdges connecting_edge_set(const Graph& g, const CycleCover& cover) {
    validate_cover(g, cover);
    const int s = static_cast<int>(cover.components.size());
    std::vector<int> comp_of(g.n(), -1);
    for (int c = 0; c < s; ++c) {
        if (const auto* e = std::get_if<CoverEdge>(&cover.components[c])) {
            comp_of[e->i - 1] = comp_of[e->j - 1] = c;
        } else {
            for (int v : std::get<CoverCycle>(cover.components[c]).vertices)
                comp_of[v - 1] = c;
        }
    }

    std::vector<int> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    ConnectingEdges out;
    std::vector<std::vector<int>> comp_adj(s);
    for (auto [i, j] : g.edges()) {  // already lexicographic
        int a = find(comp_of[i - 1]), b = find(comp_of[j - 1]);
        if (a != b) {
            parent[a] = b;
            out.edges.push_back({i, j});
            comp_adj[comp_of[i - 1]].push_back(comp_of[j - 1]);
            comp_adj[comp_of[j - 1]].push_back(comp_of[i - 1]);
        }
    }

    out.component_distance.assign(s, -1);
    std::queue<int> q;
    q.push(0);
    out.component_distance[0] = 0;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        for (int d : comp_adj[c])
            if (out.component_distance[d] == -1) {
                out.component_distance[d] = out.component_distance[c] + 1;
                q.push(d);
            }
    }
    return out;
}

} // namespace nodal
