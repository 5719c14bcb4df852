// Acceptance checks: one PASS/FAIL line per criterion, each timed against
// its limit. Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cyclefire/circuits.hpp"
#include "cyclefire/firing.hpp"
#include "cyclefire/linalg.hpp"
#include "cyclefire/mbasis.hpp"
#include "cyclefire/reference_bases.hpp"
#include "support.hpp"

using namespace cyclefire;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (!detail.empty())
            detail += "; ";
        detail += what;
        pass = false;
    }
};

std::set<std::string> digits(const std::vector<ChipConfig>& configs)
{
    std::set<std::string> out;
    for (const auto& c : configs) {
        std::string s;
        for (const auto& x : c)
            s += x.get_str();
        out.insert(s);
    }
    return out;
}

std::string show(const std::set<std::string>& s)
{
    std::string out = "{";
    for (const auto& x : s)
        out += (out.size() > 1 ? "," : "") + x;
    return out + "}";
}

Outcome diamond()
{
    Outcome o;
    Graph g = testsupport::diamond();
    o.require(reduced_laplacian(g) == IntMatrix{{2, -1, 0}, {-1, 3, -1}, {0, -1, 2}}, "reduced Laplacian differs");
    o.require(critical_group(g) == make_vector({8}), "critical group is not Z/8Z");

    const std::set<std::string> printed_classical{"121", "111", "120", "021", "101", "110", "011", "020"};
    const auto supers = digits(classical_superstables(g));
    o.require(supers == printed_classical, "classical superstables " + show(supers) + " != printed " +
                                               show(printed_classical) + " (printed set equals the criticals: " +
                                               (digits(classical_criticals(g)) == printed_classical ? "yes" : "no") +
                                               ")");

    std::vector<IntVector> faces;
    for (const auto& f : trace_faces(g).bounded)
        faces.push_back(f.flow);
    const IntMatrix dual = dual_laplacian(faces);
    o.require(dual == IntMatrix{{3, -1}, {-1, 3}}, "face dual Laplacian differs");

    const std::set<std::string> printed_dual{"22", "21", "12", "02", "11", "20", "01", "10"};
    const auto zs = enumerate_z_superstables(RedistributionMatrix(dual));
    std::set<std::string> complements;
    for (const auto& c : zs)
        complements.insert(std::to_string(2 - c[0].get_si()) + std::to_string(2 - c[1].get_si()));
    o.require(digits(zs) == printed_dual, "dual superstables " + show(digits(zs)) + " != printed " +
                                              show(printed_dual) + " (printed set equals (2,2) - superstables: " +
                                              (complements == printed_dual ? "yes" : "no") + ")");
    return o;
}

Outcome k5_reference()
{
    Outcome o;
    ReferenceBasis ref = reference_basis("K5");
    const IntMatrix l = gram(ref.basis);
    o.require(l == ref.printed_dual_laplacian, "Gram differs from the printed dual Laplacian");
    o.require(is_m_matrix(l).is_m_matrix, "not an M-matrix");
    const auto s = enumerate_z_superstables(RedistributionMatrix(l));
    o.require(s.size() == 125, "count " + std::to_string(s.size()));
    o.require(degree_histogram(s) == std::vector<std::size_t>{1, 6, 19, 38, 39, 19, 3}, "degree histogram differs");
    const std::set<std::string> printed{"000112", "000211", "010022", "010210", "010300", "020021", "020040", "020111",
                                        "021020", "021110", "030101", "100102", "101020", "101110", "130020", "130110",
                                        "200021", "200111", "210020", "210110", "300020", "310000"};
    o.require(digits(maximal_elements(s)) == printed, "maximal elements differ");
    return o;
}

Outcome multiset_identity()
{
    Outcome o;
    RedistributionMatrix l(reference_basis("K5").printed_dual_laplacian);
    const ChipConfig c = make_vector({1, 1, 0, 0, 0, 1});
    o.require(is_zero(fire_multiset(c, l, make_vector({5, 3, 8, 6, 4, 6}))), "c - L z is not zero");
    o.require(is_set_superstable(c, l), "not set-superstable");
    o.require(!is_z_superstable(c, l), "z-superstable");
    return o;
}

Outcome gram_schmidt_example()
{
    Outcome o;
    const std::vector<IntVector> vs{make_vector({1, 0, 2, 1}), make_vector({1, 1, 0, 1}), make_vector({2, 0, 1, 1})};
    o.require(integer_gram_schmidt(vs) == std::vector<IntVector>{make_vector({1, 0, 2, 1}), make_vector({4, 6, -4, 4}),
                                                                 make_vector({396, -288, -144, -108})},
              "q vectors differ");
    o.require(mbasis_transform(vs).basis == std::vector<IntVector>{make_vector({1, 0, 2, 1}),
                                                                    make_vector({0, 1, -2, 0}),
                                                                    make_vector({-3, -6, 3, -4})},
              "f vectors differ");
    return o;
}

Outcome k33_reference()
{
    Outcome o;
    ReferenceBasis ref = reference_basis("K33");
    const IntMatrix l = gram(ref.basis);
    o.require(l == ref.printed_dual_laplacian, "Gram differs from the printed dual Laplacian");
    o.require(is_cycle_m_basis(ref.graph, ref.basis).valid, "reference basis rejected");

    SearchConstraints cons;
    cons.max_len = 6;
    SearchReport r = find_circuit_m_basis(ref.graph, cons);
    o.require(r.status == SearchStatus::found && is_cycle_m_basis(ref.graph, r.certificate->basis).valid,
              "circuit search: " + to_string(r.status));

    const Integer trees = spanning_tree_count(ref.graph);
    const auto s = enumerate_z_superstables(RedistributionMatrix(l));
    o.require(trees == 81, "tree count " + trees.get_str());
    o.require(Integer(static_cast<unsigned long>(s.size())) == trees, "z-superstable count " + std::to_string(s.size()));
    return o;
}

Outcome obstruction(const Graph& g, std::size_t len)
{
    Outcome o;
    SearchConstraints cons;
    cons.exact_lens = {len};
    SearchReport r = find_circuit_m_basis(g, cons);
    o.require(r.status == SearchStatus::infeasible, "status " + to_string(r.status));
    o.detail = o.pass ? "exhausted after " + std::to_string(r.nodes) + " nodes over " +
                            std::to_string(r.circuits_considered) + " circuits"
                      : o.detail;
    return o;
}

Outcome property_suite()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    std::size_t graphs = 0, enumerated = 0;
    for (const auto& g : testsupport::graph_corpus(6)) {
        ++graphs;
        const std::string name = "graph " + std::to_string(graphs) + " (" + std::to_string(g.vertex_count()) + "v/" +
                                 std::to_string(g.edge_count()) + "e)";
        const auto start = fundamental_cycle_basis(g);
        const MBasisCertificate cert = mbasis_transform(start);
        const Integer trees = spanning_tree_count(g);
        if (start.empty()) {
            o.require(trees == 1, name + ": tree with " + trees.get_str() + " spanning trees");
            continue;
        }
        const std::size_t m = g.edge_count();
        o.require(is_z_matrix(cert.dual_laplacian), name + ": (a) Gram is not a Z-matrix");
        o.require(same_lattice(IntMatrix::from_columns(start, m), IntMatrix::from_columns(cert.basis, m)),
                  name + ": (a) lattice changed");
        o.require(determinant(cert.dual_laplacian) == trees, name + ": (b) det != tree count");
        o.require(cokernel_map(cert.dual_laplacian).nontrivial_factors() ==
                      critical_group(g),
                  name + ": (c) invariant factors differ");

        RedistributionMatrix l(cert.dual_laplacian);
        // Enumeration is cheap here, so (d) is checked beyond genus 6 too.
        ++enumerated;
        const auto s = enumerate_z_superstables(l);
        o.require(Integer(static_cast<unsigned long>(s.size())) == trees, name + ": (d) count != tree count");
        for (int trial = 0; trial < 100; ++trial) {
            ChipConfig c(l.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                const long cap = 3 * std::min(l.threshold(i).get_si(), 20L);
                c[i] = std::uniform_int_distribution<long>(0, cap)(rng);
            }
            StabilizeResult a = stabilize(c, l);
            StabilizeResult b = stabilize(c, l, [&](std::span<const std::size_t> legal) {
                return legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
            });
            if (a.stable != b.stable || a.firing_counts != b.firing_counts) {
                o.require(false, name + ": (e) order dependence");
                break;
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(graphs) + " graphs, " + std::to_string(enumerated) + " enumerated";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double limit_seconds;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "diamond graph reference data", 1, diamond},
        {2, "K5 reference basis and z-superstables", 60, k5_reference},
        {3, "multiset-firing identity", 5, multiset_identity},
        {4, "integer Gram-Schmidt and M-basis example", 1, gram_schmidt_example},
        {5, "K3,3 reference basis, circuit search, z-superstable count", 300, k33_reference},
        {6, "K5 triangle-only search is infeasible", 300,
         [] { return obstruction(testsupport::complete_graph(5), 3); }},
        {6, "K3,3 four-cycle-only search is infeasible", 300,
         [] { return obstruction(testsupport::complete_bipartite(3, 3), 4); }},
        {7, "property suite over all connected graphs with at most 6 vertices", 1800, property_suite},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto started = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (seconds > c.limit_seconds)
            o.require(false, "took longer than " + std::to_string(c.limit_seconds) + " s");
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << seconds << " s]";
        if (!o.detail.empty())
            line << " -- " << o.detail;
        std::cout << line.str() << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
