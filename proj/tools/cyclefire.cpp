// cyclefire: command-line front end. Payload JSON goes to stdout, diagnostics
// and timings to stderr. Exit codes: 0 ok, 1 error, 2 infeasible, 3 inconclusive.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "cyclefire/circuits.hpp"
#include "cyclefire/errors.hpp"
#include "cyclefire/firing.hpp"
#include "cyclefire/io.hpp"
#include "cyclefire/linalg.hpp"
#include "cyclefire/mbasis.hpp"

namespace cf = cyclefire;
using cf::json;

namespace {

enum ExitCode { exit_ok = 0, exit_error = 1, exit_infeasible = 2, exit_inconclusive = 3 };

json configs_to_json(std::span<const cf::ChipConfig> configs)
{
    json out = json::array();
    for (const auto& c : configs)
        out.push_back(cf::to_json(c));
    return out;
}

void emit(const json& payload) { std::cout << payload.dump(2) << '\n'; }

// Resolves --basis: "auto" transforms the fundamental basis, "faces" traces
// the embedding, anything else is a basis file.
cf::FlowBasis select_basis(const cf::Graph& g, const std::string& choice)
{
    if (choice == "auto")
        return cf::mbasis_transform(cf::fundamental_cycle_basis(g)).basis;
    if (choice == "faces") {
        cf::FlowBasis basis;
        for (const auto& f : cf::trace_faces(g).bounded)
            basis.push_back(f.flow);
        return basis;
    }
    cf::BasisDocument doc = cf::load_basis_file(choice);
    if (doc.graph && doc.graph->edge_count() != g.edge_count())
        throw cf::DimensionError("basis file graph has " + std::to_string(doc.graph->edge_count()) +
                                 " edges, expected " + std::to_string(g.edge_count()));
    return doc.vectors;
}

cf::FlowBasis validated_basis(const cf::Graph& g, const std::string& choice)
{
    cf::FlowBasis basis = select_basis(g, choice);
    cf::CycleMBasisDiagnosis diag = cf::is_cycle_m_basis(g, basis);
    if (!diag.valid)
        throw cf::Error("basis is not a cycle M-basis: " + diag.message);
    return basis;
}

int cmd_analyze(const std::string& graph_path)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.tail, e.head});
    emit({{"vertices", g.vertex_count()},
          {"edges", edges},
          {"root", g.root()},
          {"genus", g.edge_count() + 1 - static_cast<std::size_t>(g.vertex_count())},
          {"trees", cf::to_json(cf::spanning_tree_count(g))},
          {"group", cf::to_json(cf::critical_group(g))}});
    return exit_ok;
}

int cmd_mbasis(const std::string& graph_path, const std::string& start, const std::string& basis_file,
               const std::string& out_path)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    cf::FlowBasis input;
    if (start == "fundamental")
        input = cf::fundamental_cycle_basis(g);
    else if (start == "faces")
        input = select_basis(g, "faces");
    else if (basis_file.empty())
        throw cf::Error("--start file needs --basis-file");
    else
        input = select_basis(g, basis_file);

    cf::CycleMBasisDiagnosis start_diag = cf::is_cycle_m_basis(g, input);
    if (start_diag.failure == cf::CycleMBasisDiagnosis::Failure::wrong_count ||
        start_diag.failure == cf::CycleMBasisDiagnosis::Failure::not_a_flow ||
        start_diag.failure == cf::CycleMBasisDiagnosis::Failure::not_full_lattice)
        throw cf::Error("start basis does not span the flow lattice: " + start_diag.message);

    cf::MBasisCertificate cert = cf::mbasis_transform(input);
    cf::CycleMBasisDiagnosis diag = cf::is_cycle_m_basis(g, cert.basis);
    json payload = cf::certificate_to_json(g, cert);
    payload["valid"] = diag.valid;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw cf::Error("cannot write " + out_path);
        out << payload.dump(2) << '\n';
    }
    emit(payload);
    return diag.valid ? exit_ok : exit_error;
}

int cmd_circuit_basis(const std::string& graph_path, const cf::SearchConstraints& cons)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    cf::SearchReport report = cf::find_circuit_m_basis(g, cons);
    json payload = {{"status", cf::to_string(report.status)},
                    {"nodes", std::to_string(report.nodes)},
                    {"circuits_considered", std::to_string(report.circuits_considered)}};
    if (report.certificate) {
        json circuits = json::array();
        for (const auto& c : report.chosen)
            circuits.push_back(c.vertices);
        payload["circuits"] = circuits;
        payload["certificate"] = cf::certificate_to_json(g, *report.certificate);
        payload["valid"] = cf::is_cycle_m_basis(g, report.certificate->basis).valid;
    }
    emit(payload);
    std::cerr << "search: " << cf::to_string(report.status) << ", " << report.nodes << " nodes, "
              << report.circuits_considered << " circuits, " << report.seconds << " s\n";
    switch (report.status) {
    case cf::SearchStatus::found:
        return exit_ok;
    case cf::SearchStatus::infeasible:
        return exit_infeasible;
    case cf::SearchStatus::inconclusive:
        return exit_inconclusive;
    }
    return exit_error;
}

int cmd_zsuper(const std::string& graph_path, const std::string& basis_choice)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    cf::FlowBasis basis = validated_basis(g, basis_choice);
    cf::RedistributionMatrix l(cf::dual_laplacian(basis));
    std::vector<cf::ChipConfig> configs = cf::enumerate_z_superstables(l);
    emit({{"dual_laplacian", cf::to_json(l.matrix())},
          {"count", std::to_string(configs.size())},
          {"degree_histogram", cf::degree_histogram(configs)},
          {"maximal", configs_to_json(cf::maximal_elements(configs))},
          {"configs", configs_to_json(configs)}});
    return exit_ok;
}

int cmd_stabilize(const std::string& graph_path, const std::string& basis_choice, const std::string& config,
                  const std::string& multiset, std::uint64_t cap)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    cf::IntMatrix m = basis_choice == "classical" ? cf::reduced_laplacian(g)
                                                  : cf::dual_laplacian(validated_basis(g, basis_choice));
    cf::RedistributionMatrix l(m);
    cf::ChipConfig c = cf::parse_int_list(config);
    if (c.size() != l.size())
        throw cf::DimensionError("config has " + std::to_string(c.size()) + " entries, expected " +
                                 std::to_string(l.size()));
    if (!cf::is_effective(c))
        throw cf::ConfigurationError("config has a negative entry");

    if (!multiset.empty()) {
        cf::IntVector z = cf::parse_int_list(multiset);
        if (!cf::is_effective(z))
            throw cf::ConfigurationError("multiset has a negative entry");
        cf::ChipConfig result = cf::fire_multiset(c, l, z);
        emit({{"config", cf::to_json(c)},
              {"multiset", cf::to_json(z)},
              {"result", cf::to_json(result)},
              {"effective", cf::is_effective(result)}});
        return exit_ok;
    }
    cf::StabilizeResult r = cf::stabilize(c, l, cap);
    emit({{"config", cf::to_json(c)},
          {"stable", cf::to_json(r.stable)},
          {"firing_counts", cf::to_json(r.firing_counts)},
          {"fires", std::to_string(r.fires)}});
    return exit_ok;
}

int cmd_superstables(const std::string& graph_path)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    std::vector<cf::ChipConfig> supers = cf::classical_superstables(g);
    emit({{"sites", g.sites()},
          {"count", std::to_string(supers.size())},
          {"degree_histogram", cf::degree_histogram(supers)},
          {"superstables", configs_to_json(supers)},
          {"criticals", configs_to_json(cf::classical_criticals(g))}});
    return exit_ok;
}

int cmd_faces(const std::string& graph_path)
{
    cf::Graph g = cf::load_graph_file(graph_path);
    if (!g.rotation())
        throw cf::Error("graph has no rotation system");
    cf::PlanarCircuitBasis planar = cf::planar_circuit_m_basis(g);
    json faces = json::array();
    for (const auto& f : planar.faces.bounded)
        faces.push_back({{"walk", f.walk}, {"flow", cf::to_json(f.flow)}});
    emit({{"bounded", faces},
          {"unbounded", {{"walk", planar.faces.unbounded.walk}, {"flow", cf::to_json(planar.faces.unbounded.flow)}}},
          {"dual_laplacian", cf::to_json(planar.certificate.dual_laplacian)},
          {"dual_graph_laplacian", cf::to_json(planar.dual_graph_laplacian)},
          {"matches_dual_graph", planar.matches_dual_graph},
          {"valid", cf::is_cycle_m_basis(g, planar.certificate.basis).valid}});
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cycle chip-firing, flow lattice M-bases and circuit basis search"};
    app.require_subcommand(1);

    std::string graph_path;
    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("graph", graph_path, "Graph JSON file")->required()->check(CLI::ExistingFile);
    };

    auto* analyze = app.add_subcommand("analyze", "Genus, spanning-tree count and critical group");
    add_graph(analyze);

    std::string start = "fundamental", basis_file, out_path;
    auto* mbasis = app.add_subcommand("mbasis", "Transform a flow lattice basis into an M-basis");
    add_graph(mbasis);
    mbasis->add_option("--start", start, "Starting basis")
        ->check(CLI::IsMember({"fundamental", "faces", "file"}))
        ->capture_default_str();
    mbasis->add_option("--basis-file", basis_file, "Basis file for --start file");
    mbasis->add_option("--out", out_path, "Also write the certificate here");

    cf::SearchConstraints cons;
    std::size_t max_len = 0;
    std::vector<std::size_t> exact_lens;
    std::string order = "ascending";
    auto* circuit = app.add_subcommand("circuit-basis", "Search for a circuit M-basis");
    add_graph(circuit);
    circuit->add_option("--max-len", max_len, "Longest circuit considered")->check(CLI::Range(3, 1 << 20));
    circuit->add_option("--exact-lens", exact_lens, "Allowed circuit lengths")
        ->delimiter(',')
        ->check(CLI::Range(3, 1 << 20));
    circuit->add_option("--budget", cons.node_budget, "Node budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    circuit->add_option("--order", order, "Circuit order")
        ->check(CLI::IsMember({"ascending", "descending", "shuffled"}))
        ->capture_default_str();
    circuit->add_option("--seed", cons.seed, "Seed for --order shuffled");

    std::string basis_choice = "auto";
    auto* zsuper = app.add_subcommand("zsuper", "Enumerate z-superstable configurations");
    add_graph(zsuper);
    zsuper->add_option("--basis", basis_choice, "auto, faces, or a basis file")->capture_default_str();

    std::string config, multiset;
    std::uint64_t cap = cf::default_fire_cap;
    auto* stabilize = app.add_subcommand("stabilize", "Stabilize a configuration or fire a multiset");
    add_graph(stabilize);
    stabilize->add_option("--basis", basis_choice, "auto, faces, classical, or a basis file")->capture_default_str();
    stabilize->add_option("--config", config, "Comma-separated chip counts")->required();
    stabilize->add_option("--multiset", multiset, "Fire each site this many times instead of stabilizing");
    stabilize->add_option("--cap", cap, "Maximum number of fires")->capture_default_str();

    auto* superstables = app.add_subcommand("superstables", "Classical superstable and critical configurations");
    add_graph(superstables);

    auto* faces = app.add_subcommand("faces", "Trace the faces of a planar rotation system");
    add_graph(faces);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = exit_error;
    try {
        if (*analyze) {
            code = cmd_analyze(graph_path);
        } else if (*mbasis) {
            code = cmd_mbasis(graph_path, start, basis_file, out_path);
        } else if (*circuit) {
            if (max_len)
                cons.max_len = max_len;
            cons.exact_lens.insert(exact_lens.begin(), exact_lens.end());
            cons.order = order == "descending" ? cf::CircuitOrder::descending
                         : order == "shuffled" ? cf::CircuitOrder::shuffled
                                               : cf::CircuitOrder::ascending;
            code = cmd_circuit_basis(graph_path, cons);
        } else if (*zsuper) {
            code = cmd_zsuper(graph_path, basis_choice);
        } else if (*stabilize) {
            code = cmd_stabilize(graph_path, basis_choice, config, multiset, cap);
        } else if (*superstables) {
            code = cmd_superstables(graph_path);
        } else if (*faces) {
            code = cmd_faces(graph_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = exit_error;
    }
    std::cerr << "wall time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()
              << " s\n";
    return code;
}
