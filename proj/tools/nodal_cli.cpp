// Command-line front end: classification, nodal reports, magnetic Hessians,
// extremizer constructions, transversality checks, sign stabilization, the
// C_4 survey, and the full verification battery. All I/O is JSON.

#include "nodal/battery.hpp"
#include "nodal/construct.hpp"
#include "nodal/errors.hpp"
#include "nodal/magnetic.hpp"
#include "nodal/perturb.hpp"
#include "nodal/sampling.hpp"
#include "nodal/serialize.hpp"
#include "nodal/transversal.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace nodal;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;      // verified-failure verdict
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

SupportedMatrix load_inputs(const std::string& graph_path, const std::string& matrix_path) {
    Json mj = Json::parse(read_file(matrix_path));
    if (graph_path.empty()) return matrix_from_json(mj);
    Graph g = graph_from_json(Json::parse(read_file(graph_path)));
    return matrix_from_json(mj, std::move(g));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nodal edge counts for symmetric matrices supported on graphs"};
    app.require_subcommand(1);

    Tolerances tol;
    std::uint64_t seed = 20250809;
    std::string out_path;
    app.add_option("--tol-gap", tol.gap, "relative simple-spectrum threshold");
    app.add_option("--tol-zero", tol.zero, "relative nonvanishing threshold");
    app.add_option("--fd-step", tol.fd_step, "finite-difference step");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_path, "output path (default stdout)");

    std::string graph_path, matrix_path;

    auto* betti_cmd = app.add_subcommand("betti", "first Betti number of a graph");
    betti_cmd->add_option("--graph", graph_path)->required();

    auto* classify_cmd =
        app.add_subcommand("classify", "determinantal / sub-determinantal classification");
    classify_cmd->add_option("--graph", graph_path)->required();

    auto* nodal_cmd = app.add_subcommand("nodal", "NCC report, nodal counts and bound check");
    nodal_cmd->add_option("--graph", graph_path)->required();
    nodal_cmd->add_option("--matrix", matrix_path)->required();

    auto* ncc_cmd = app.add_subcommand("ncc", "nodal count condition report");
    ncc_cmd->add_option("--graph", graph_path)->required();
    ncc_cmd->add_option("--matrix", matrix_path)->required();

    auto* magnetic_cmd =
        app.add_subcommand("magnetic", "magnetic Hessians, Morse indices, surplus match");
    magnetic_cmd->add_option("--graph", graph_path)->required();
    magnetic_cmd->add_option("--matrix", matrix_path)->required();

    std::string family;
    int cn = 0, cbeta = 0;
    double ceps = 0, cdelta = 0;
    auto* construct_cmd = app.add_subcommand("construct", "explicit extremizer families");
    construct_cmd
        ->add_option("--family", family, "dense|path|zero-path|kn|odd-cycle|generic")
        ->required();
    construct_cmd->add_option("--n", cn, "order parameter");
    construct_cmd->add_option("--beta", cbeta, "first Betti number");
    construct_cmd->add_option("--eps", ceps, "coupling parameter");
    construct_cmd->add_option("--delta", cdelta, "secondary coupling");
    construct_cmd->add_option("--graph", graph_path, "input graph (generic family)");

    std::string space = "sg";
    bool do_repair = false;
    double repair_gap = 0;
    auto* trans_cmd = app.add_subcommand("transversality", "orbit transversality and repair");
    trans_cmd->add_option("--matrix", matrix_path)->required();
    trans_cmd->add_option("--graph", graph_path, "support graph (default: inferred)");
    trans_cmd->add_option("--space", space, "sg|s0g");
    trans_cmd->add_flag("--repair", do_repair, "run the repair iteration");
    trans_cmd->add_option("--gap", repair_gap, "target eigenvalue spacing");

    int max_resamples = 32;
    auto* signing_cmd = app.add_subcommand("signing", "sign vanishing eigenvector entries");
    signing_cmd->add_option("--graph", graph_path)->required();
    signing_cmd->add_option("--matrix", matrix_path)->required();
    signing_cmd->add_option("--max-resamples", max_resamples);

    long long samples = 1000000;
    auto* survey_cmd = app.add_subcommand("survey", "C_4 diagonal-perturbation sign survey");
    survey_cmd->add_option("--samples", samples);

    std::string only;
    auto* verify_cmd = app.add_subcommand("verify", "full verification battery");
    verify_cmd->add_option("--only", only, "substring filter on check names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (betti_cmd->parsed()) {
            Graph g = load_graph(read_file(graph_path));
            write_output(out_path, Json{{"n", g.n()}, {"betti", betti(g)}});
            return kExitPass;
        }

        if (classify_cmd->parsed()) {
            Graph g = load_graph(read_file(graph_path));
            write_output(out_path, to_json(classify_determinantal(g)));
            return kExitPass;
        }

        if (nodal_cmd->parsed() || ncc_cmd->parsed()) {
            SupportedMatrix a = load_inputs(graph_path, matrix_path);
            EigenSystem es = jacobi_eigensystem(a.entries());
            NccReport ncc = check_ncc(a, es, tol.gap, tol.zero);
            if (ncc_cmd->parsed()) {
                write_output(out_path, to_json(ncc));
                return ncc.satisfied ? kExitPass : kExitFail;
            }
            NodalReport rep = nodal_counts(a, es.vectors, tol.zero);
            BoundsVerdict bounds = verify_surplus_bounds(rep, betti(a.graph()), a.n());
            write_output(out_path, Json{{"ncc", to_json(ncc)},
                                        {"nodal", to_json(rep)},
                                        {"bounds", to_json(bounds)}});
            return ncc.satisfied && bounds.pass ? kExitPass : kExitFail;
        }

        if (magnetic_cmd->parsed()) {
            SupportedMatrix a = load_inputs(graph_path, matrix_path);
            EigenSystem es = jacobi_eigensystem(a.entries());
            NccReport ncc = check_ncc(a, es, tol.gap, tol.zero);
            if (!ncc.satisfied) {
                write_output(out_path, Json{{"ncc", to_json(ncc)},
                                            {"error", "nodal count condition not satisfied"}});
                return kExitFail;
            }
            SpanningTreeFrame frame = spanning_frame(a.graph());
            NodalReport rep = nodal_counts(a, es.vectors, tol.zero);
            HessianStack pert =
                build_hessian_stack(a, es, frame, HessianMethod::Perturbative, tol);
            MorseVerdict mv = morse_verify(a, es, frame, rep, tol);
            Json verdict = Json::array();
            for (size_t k = 0; k < mv.per_k.size(); ++k)
                verdict.push_back(Json{{"k", k + 1},
                                       {"surplus", rep.surpluses[k]},
                                       {"morse", pert.morse_indices[k]},
                                       {"match", static_cast<bool>(mv.per_k[k])},
                                       {"degenerate", static_cast<bool>(mv.degenerate[k])}});
            write_output(out_path, Json{{"hessians", to_json(pert)},
                                        {"morse_verdict", verdict},
                                        {"all_match", mv.all_match}});
            return mv.all_match ? kExitPass : kExitFail;
        }

        if (construct_cmd->parsed()) {
            ConstructionResult r = [&] {
                if (family == "dense") return construct_dense_extremizer(cn, cbeta, tol);
                if (family == "path") return path_extremizer(cn, cbeta, ceps, cdelta, tol);
                if (family == "zero-path")
                    return zero_diag_path_extremizer(cn, cbeta, ceps, cdelta, tol);
                if (family == "kn") return kn_zero_diag(cn, ceps, tol);
                if (family == "odd-cycle") return odd_cycle_matrix(cn, tol);
                if (family == "generic") {
                    Graph g = load_graph(read_file(graph_path));
                    ZeroDiagOutcome outcome = zero_diag_ncc_matrix(g, seed, 20, tol);
                    if (!outcome.construction) {
                        write_output(out_path,
                                     Json{{"verdict", to_json(outcome.verdict)},
                                          {"adjugate_vanishes_on_edges",
                                           outcome.adjugate_vanishes_on_edges},
                                          {"singular_samples", outcome.singular_samples}});
                        std::exit(kExitPass);
                    }
                    return *std::move(outcome.construction);
                }
                throw ParseError("unknown family: " + family);
            }();
            write_output(out_path, to_json(r));
            bool ok = !r.target_total || r.achieved_total == *r.target_total;
            return ok ? kExitPass : kExitFail;
        }

        if (trans_cmd->parsed()) {
            SupportedMatrix a = load_inputs(graph_path, matrix_path);
            SupportKind kind = space == "s0g" ? SupportKind::S0G : SupportKind::SG;
            SupportSubspace w{kind, a.graph()};
            TransversalityVerdict v = check_transversality(a.entries(), w);
            EigenSystem es = jacobi_eigensystem(a.entries());
            CommutatorDim cd = commutator_space_dim(a.entries());
            Json out{{"transversal", v.transversal},
                     {"rank", v.rank},
                     {"needed", v.needed},
                     {"commutator_rank", cd.numerical_rank},
                     {"commutator_formula", cd.formula},
                     {"profile", cd.profile.multiplicities}};
            if (do_repair) {
                if (!v.transversal) {
                    out["repair"] = "not transversal";
                    write_output(out_path, out);
                    return kExitFail;
                }
                double gap = repair_gap > 0 ? repair_gap : 1e-6 * (1 + es.norm());
                RepairResult rep =
                    transversal_repair(a.entries(), es.vectors, es.values, w, gap, tol);
                SupportedMatrix repaired(a.graph(), rep.matrix,
                                         kind == SupportKind::S0G ? SupportMode::ZeroDiagonal
                                                                  : SupportMode::GeneralDiagonal);
                out["repair"] = Json{{"matrix", to_json(repaired)},
                                     {"iterations", rep.iterations},
                                     {"residual", rep.residual}};
            }
            write_output(out_path, out);
            return v.transversal ? kExitPass : kExitFail;
        }

        if (signing_cmd->parsed()) {
            SupportedMatrix a = load_inputs(graph_path, matrix_path);
            SignBasis sb = sign_vanishing_entries(a, seed, max_resamples, tol);
            write_output(out_path, to_json(sb));
            return kExitPass;
        }

        if (survey_cmd->parsed()) {
            SurveyResult r = diag_perturbation_sign_survey(samples, seed);
            write_output(out_path, Json{{"fraction", r.fraction},
                                        {"complement", r.complement},
                                        {"expected", 5.0 / 18.0},
                                        {"samples", samples},
                                        {"rejected", r.rejected}});
            return kExitPass;
        }

        if (verify_cmd->parsed()) {
            RunConfig cfg{seed, only, tol};
            BatteryReport report = verify_suite(cfg);
            Json checks = Json::array();
            for (const auto& c : report.checks) {
                std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " ("
                          << c.runtime_s << "s) " << c.details << "\n";
                checks.push_back(Json{{"name", c.name},
                                      {"status", c.pass ? "pass" : "fail"},
                                      {"margin", c.margin},
                                      {"runtime_s", c.runtime_s},
                                      {"details", c.details}});
            }
            write_output(out_path, Json{{"checks", checks},
                                        {"pass", report.pass},
                                        {"seed", seed},
                                        {"tolerances", Json{{"gap", tol.gap},
                                                            {"zero", tol.zero},
                                                            {"hess", tol.hess},
                                                            {"fd_step", tol.fd_step}}}});
            return report.pass ? kExitPass : kExitFail;
        }
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutOfRange& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
