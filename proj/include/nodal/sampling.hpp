#ifndef NODAL_SAMPLING_HPP
#define NODAL_SAMPLING_HPP

#include "nodal/matrix.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace nodal {

// FNV-1a of the check name folded into the master seed, so each battery
// check owns an independent, reproducible stream.
std::uint64_t mix_seed(std::uint64_t master, std::string_view tag);

using Rng = std::mt19937_64;

// i.i.d. standard normal entries on edges (and the diagonal for
// GeneralDiagonal), symmetrized; deterministic per (g, mode, seed).
SupportedMatrix random_supported_matrix(const Graph& g, SupportMode mode, std::uint64_t seed);
SupportedMatrix random_supported_matrix(const Graph& g, SupportMode mode, Rng& rng);

// Random spanning tree (uniform attachment) plus extra_edges additional
// edges drawn without replacement.
Graph random_connected_graph(int n, int extra_edges, Rng& rng);
Graph random_tree(int n, Rng& rng);

// Connected bipartite graph on an even number of vertices containing the
// perfect matching (2i-1, 2i).
Graph random_bipartite_matched_graph(int n, int extra_edges, Rng& rng);

} // namespace nodal

#endif
