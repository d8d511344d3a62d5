#ifndef NODAL_SERIALIZE_HPP
#define NODAL_SERIALIZE_HPP

#include "nodal/construct.hpp"
#include "nodal/cover.hpp"
#include "nodal/graph.hpp"
#include "nodal/magnetic.hpp"
#include "nodal/matrix.hpp"
#include "nodal/nodal.hpp"
#include "nodal/perturb.hpp"

#include <json.hpp>

#include <string>

namespace nodal {

using Json = nlohmann::json;

// Graph JSON: {"n": <int>, "edges": [[i,j],...]}, 1-based, i < j.
Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);
Graph load_graph(const std::string& text);

// Matrix JSON: {"n": <int>, "mode": "general"|"zero-diagonal", "rows": [[...]]}.
Json to_json(const SupportedMatrix& m);
SupportedMatrix matrix_from_json(const Json& j);
SupportedMatrix matrix_from_json(const Json& j, Graph graph);
SupportedMatrix load_matrix(const std::string& text);

// Verdict JSON: {"kind": "determinantal"|"sub-determinantal", "cover": [...]}.
Json to_json(const DeterminantalVerdict& v);

Json to_json(const NccReport& r);
Json to_json(const NodalReport& r);
Json to_json(const BoundsVerdict& v);
Json to_json(const HessianStack& st);
Json to_json(const SignBasis& sb);
Json to_json(const ConstructionResult& r);

std::string read_file(const std::string& path);
void write_output(const std::string& path, const Json& j);  // empty path = stdout

} // namespace nodal

#endif
