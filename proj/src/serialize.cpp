#include "nodal/serialize.hpp"
#include "nodal/errors.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace nodal {

Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i, j});
    return Json{{"n", g.n()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
    try {
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        return Graph(n, std::move(edges));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad graph document: ") + e.what());
    }
}

Graph load_graph(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return graph_from_json(j);
}

Json to_json(const SupportedMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m.entries()(i, j));
        rows.push_back(row);
    }
    return Json{{"n", m.n()},
                {"mode", m.mode() == SupportMode::ZeroDiagonal ? "zero-diagonal" : "general"},
                {"rows", rows}};
}

namespace {

std::pair<Mat, SupportMode> parse_matrix_body(const Json& j) {
    int n = j.at("n").get<int>();
    std::string mode_s = j.value("mode", "general");
    SupportMode mode;
    if (mode_s == "general") mode = SupportMode::GeneralDiagonal;
    else if (mode_s == "zero-diagonal") mode = SupportMode::ZeroDiagonal;
    else throw ParseError("mode must be 'general' or 'zero-diagonal'");

    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != n) throw ParseError("row count mismatch");
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw ParseError("column count mismatch");
        for (int c = 0; c < n; ++c) m(i, c) = rows[i][c].get<double>();
    }
    return {std::move(m), mode};
}

} // namespace

SupportedMatrix matrix_from_json(const Json& j) {
    try {
        auto [m, mode] = parse_matrix_body(j);
        return SupportedMatrix(support_graph(m), std::move(m), mode);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad matrix document: ") + e.what());
    }
}

SupportedMatrix matrix_from_json(const Json& j, Graph graph) {
    try {
        auto [m, mode] = parse_matrix_body(j);
        return SupportedMatrix(std::move(graph), std::move(m), mode);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad matrix document: ") + e.what());
    }
}

SupportedMatrix load_matrix(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return matrix_from_json(j);
}

Json to_json(const DeterminantalVerdict& v) {
    Json out{{"kind", v.determinantal ? "determinantal" : "sub-determinantal"}};
    if (v.determinantal) {
        Json cover = Json::array();
        for (const auto& comp : v.cover.components) {
            if (const auto* e = std::get_if<CoverEdge>(&comp))
                cover.push_back({{"type", "edge"}, {"v", {e->i, e->j}}});
            else
                cover.push_back({{"type", "cycle"}, {"v", std::get<CoverCycle>(comp).vertices}});
        }
        out["cover"] = cover;
    }
    return out;
}

Json to_json(const NccReport& r) {
    Json off = Json::array();
    for (auto [i, j] : r.offending_edges) off.push_back({i, j});
    Json van = Json::array();
    for (auto [k, i] : r.vanishing) van.push_back({k, i});
    return Json{{"strictly_supported", r.strictly_supported}, {"offending_edges", off},
                {"simple_spectrum", r.simple_spectrum},       {"min_gap", r.min_gap},
                {"nonvanishing", r.nonvanishing},             {"vanishing_entries", van},
                {"satisfied", r.satisfied}};
}

Json to_json(const NodalReport& r) {
    Json per_edge = Json::object();
    for (const auto& [e, c] : r.per_edge)
        per_edge[std::to_string(e.first) + "-" + std::to_string(e.second)] = c;
    return Json{{"strong_counts", r.strong_counts},
                {"weak_counts", r.weak_counts},
                {"surpluses", r.surpluses},
                {"per_edge", per_edge},
                {"total", r.total},
                {"average", r.average},
                {"average_surplus", r.average_surplus}};
}

Json to_json(const BoundsVerdict& v) {
    return Json{{"per_k_ok", v.per_k_ok},           {"average_ok", v.average_ok},
                {"lower_margin", v.lower_margin},   {"upper_margin", v.upper_margin},
                {"negation_total", v.negation_total}, {"pass", v.pass}};
}

Json to_json(const HessianStack& st) {
    Json list = Json::array();
    for (size_t k = 0; k < st.hessians.size(); ++k) {
        Json h = Json::array();
        for (int i = 0; i < st.hessians[k].rows(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < st.hessians[k].cols(); ++j) row.push_back(st.hessians[k](i, j));
            h.push_back(row);
        }
        list.push_back(Json{{"k", k + 1},
                            {"H", h},
                            {"morse", st.morse_indices[k]},
                            {"degenerate", static_cast<bool>(st.degenerate[k])},
                            {"method",
                             st.method == HessianMethod::Perturbative ? "pert" : "fd"}});
    }
    return list;
}

Json to_json(const SignBasis& sb) {
    Json signs = Json::array();
    for (int k = 0; k < sb.signs.cols(); ++k) {
        Json col = Json::array();
        for (int i = 0; i < sb.signs.rows(); ++i) col.push_back(static_cast<int>(sb.signs(i, k)));
        signs.push_back(col);
    }
    return Json{{"signs", signs}, {"epsilon", sb.epsilon}, {"resamples", sb.resamples}};
}

Json to_json(const ConstructionResult& r) {
    Json basis = Json::array();
    for (int k = 0; k < r.basis.cols(); ++k) {
        Json col = Json::array();
        for (int i = 0; i < r.basis.rows(); ++i) col.push_back(r.basis(i, k));
        basis.push_back(col);
    }
    Json out{{"matrix", to_json(r.matrix)},
             {"graph", to_json(r.matrix.graph())},
             {"basis", basis},
             {"achieved_total", r.achieved_total},
             {"ncc", to_json(r.ncc)},
             {"report", to_json(r.report)}};
    if (r.target_total) out["target_total"] = *r.target_total;
    else out["target_total"] = nullptr;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const Json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace nodal
