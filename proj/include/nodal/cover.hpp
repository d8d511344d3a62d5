#ifndef NODAL_COVER_HPP
#define NODAL_COVER_HPP

#include "nodal/graph.hpp"

#include <variant>
#include <vector>

namespace nodal {

// One component of a cycle cover: either a single edge or an odd cycle
// (vertices listed in cyclic order, length odd >= 3).
struct CoverEdge {
    int i, j;  // i < j
};
struct CoverCycle {
    std::vector<int> vertices;
};
using CoverComponent = std::variant<CoverEdge, CoverCycle>;

// Vertex-disjoint union of edges and odd cycles covering all of [n].
struct CycleCover {
    std::vector<CoverComponent> components;
};

// Throws InvalidCover unless the cover is vertex-disjoint, covers [n],
// and uses only edges of g (cycles odd, length >= 3).
void validate_cover(const Graph& g, const CycleCover& cover);

struct DeterminantalVerdict {
    bool determinantal = false;
    CycleCover cover;  // meaningful only when determinantal
};

// Perfect matching in the bipartite double cover of g, translated into a
// cover by edges and odd cycles (even permutation cycles are rewritten as
// alternating edges). Deterministic for fixed input.
DeterminantalVerdict classify_determinantal(const Graph& g);

// Exhaustive search for a fixed-point-free permutation sigma with
// (i, sigma(i)) in E for all i. Intended for n <= 8 cross-checks.
bool classify_determinantal_brute(const Graph& g);

struct ConnectingEdges {
    std::vector<Edge> edges;              // minimal connecting set, lexicographic
    std::vector<int> component_distance;  // tree distance from component 0
};

// Minimal edge set making (cover components + edges) connected, plus the
// per-component distances from the first component in the resulting tree.
ConnectingEdges connecting_edge_set(const Graph& g, const CycleCover& cover);

} // namespace nodal

#endif
