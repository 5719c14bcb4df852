#include <doctest.h>

#include "cyclefire/circuits.hpp"
#include "cyclefire/errors.hpp"
#include "cyclefire/linalg.hpp"
#include "cyclefire/reference_bases.hpp"
#include "support.hpp"

using namespace cyclefire;

namespace {

std::map<std::size_t, std::size_t> length_counts(const std::vector<Circuit>& cs)
{
    std::map<std::size_t, std::size_t> out;
    for (const auto& c : cs)
        ++out[c.length()];
    return out;
}

} // namespace

TEST_CASE("circuits of K5 and K3,3")
{
    auto k5 = enumerate_circuits(testsupport::complete_graph(5));
    CHECK(k5.size() == 37);
    CHECK(length_counts(k5) == std::map<std::size_t, std::size_t>{{3, 10}, {4, 15}, {5, 12}});
    CHECK(k5.front().vertices == std::vector<int>{0, 1, 2});

    auto k33 = enumerate_circuits(testsupport::complete_bipartite(3, 3));
    CHECK(length_counts(k33) == std::map<std::size_t, std::size_t>{{4, 9}, {6, 6}});
    CHECK(enumerate_circuits(testsupport::load("tree.json")).empty());
    CHECK(enumerate_circuits(testsupport::complete_graph(5), 4).size() == 25);
}

TEST_CASE("circuits are canonical, ordered and lie in the flow lattice")
{
    for (const auto& g : testsupport::graph_corpus(6)) {
        auto cs = enumerate_circuits(g);
        CHECK(length_counts(cs) == testsupport::brute_force_cycle_counts(g));
        IntMatrix d = incidence_matrix(g);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto& v = cs[i].vertices;
            CHECK(v.front() == *std::min_element(v.begin(), v.end()));
            CHECK(v[1] < v.back());
            CHECK(is_zero(d * cs[i].vector));
            CHECK(squared_norm(cs[i].vector) == static_cast<long>(v.size()));
            if (i > 0) {
                const auto& p = cs[i - 1];
                CHECK((p.length() < cs[i].length() || (p.length() == cs[i].length() && p.vertices < v)));
            }
        }
    }
}

TEST_CASE("search constraint validation")
{
    SearchConstraints c;
    c.max_len = 2;
    CHECK_THROWS_AS(c.validate(), DimensionError);
    c.max_len.reset();
    c.exact_lens = {2, 3};
    CHECK_THROWS_AS(c.validate(), DimensionError);
    c.exact_lens.clear();
    c.node_budget = 0;
    CHECK_THROWS_AS(c.validate(), DimensionError);
}

TEST_CASE("circuit M-basis of K5")
{
    Graph g = testsupport::complete_graph(5);
    SearchReport r = find_circuit_m_basis(g);
    REQUIRE(r.status == SearchStatus::found);
    REQUIRE(r.certificate.has_value());
    CHECK(is_cycle_m_basis(g, r.certificate->basis).valid);
    bool long_circuit = false;
    for (const auto& c : r.chosen) {
        long_circuit = long_circuit || c.length() >= 4;
        CHECK(walk_vector(g, c.vertices) == r.certificate->basis[&c - r.chosen.data()]);
    }
    CHECK(long_circuit);
}

TEST_CASE("circuit M-basis of K3,3 with circuits of length at most 6")
{
    Graph g = testsupport::complete_bipartite(3, 3);
    SearchConstraints c;
    c.max_len = 6;
    SearchReport r = find_circuit_m_basis(g, c);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.certificate->basis.size() == 4);
    CHECK(is_cycle_m_basis(g, r.certificate->basis).valid);
    bool hexagon = false;
    for (const auto& circuit : r.chosen)
        hexagon = hexagon || circuit.length() == 6;
    CHECK(hexagon);
}

TEST_CASE("triangles cannot form a circuit M-basis of K5")
{
    SearchConstraints c;
    c.exact_lens = {3};
    SearchReport r = find_circuit_m_basis(testsupport::complete_graph(5), c);
    CHECK(r.status == SearchStatus::infeasible);
    CHECK(r.circuits_considered == 10);
    CHECK(r.nodes > 0);
}

TEST_CASE("four-cycles cannot form a circuit M-basis of K3,3")
{
    SearchConstraints c;
    c.exact_lens = {4};
    SearchReport r = find_circuit_m_basis(testsupport::complete_bipartite(3, 3), c);
    CHECK(r.status == SearchStatus::infeasible);
    CHECK(r.circuits_considered == 9);
}

TEST_CASE("infeasibility does not depend on the circuit order")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SearchConstraints c;
        c.exact_lens = {3};
        c.order = CircuitOrder::shuffled;
        c.seed = seed;
        CHECK(find_circuit_m_basis(testsupport::complete_graph(5), c).status == SearchStatus::infeasible);
        c.exact_lens = {4};
        CHECK(find_circuit_m_basis(testsupport::complete_bipartite(3, 3), c).status == SearchStatus::infeasible);
    }
    SearchConstraints d;
    d.exact_lens = {3};
    d.order = CircuitOrder::descending;
    CHECK(find_circuit_m_basis(testsupport::complete_graph(5), d).status == SearchStatus::infeasible);
}

TEST_CASE("a tiny budget is inconclusive")
{
    SearchConstraints c;
    c.node_budget = 1;
    SearchReport r = find_circuit_m_basis(testsupport::complete_graph(5), c);
    CHECK(r.status == SearchStatus::inconclusive);
    CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("every certificate found on the corpus validates independently")
{
    SearchConstraints cons;
    cons.node_budget = 2'000'000;
    for (const auto& g : testsupport::graph_corpus(6)) {
        SearchReport r = find_circuit_m_basis(g, cons);
        if (r.status == SearchStatus::found)
            CHECK(is_cycle_m_basis(g, r.certificate->basis).valid);
        else if (g.edge_count() < 14) // K6 and K6 minus an edge exceed the budget
            CHECK(r.status == SearchStatus::infeasible);
    }
}

TEST_CASE("planar circuit M-bases")
{
    PlanarCircuitBasis d = planar_circuit_m_basis(testsupport::diamond());
    CHECK(d.certificate.dual_laplacian == IntMatrix{{3, -1}, {-1, 3}});
    CHECK(d.matches_dual_graph);

    Graph k4 = testsupport::load("k4_planar.json");
    PlanarCircuitBasis p = planar_circuit_m_basis(k4);
    CHECK(p.certificate.basis.size() == 3);
    CHECK(determinant(p.certificate.dual_laplacian) == 16);
    CHECK(is_cycle_m_basis(k4, p.certificate.basis).valid);
    CHECK(p.matches_dual_graph);

    PlanarCircuitBasis c5 = planar_circuit_m_basis(testsupport::load("c5.json"));
    CHECK(c5.certificate.dual_laplacian == IntMatrix{{5}});
    CHECK(c5.matches_dual_graph);
}

TEST_CASE("reference bases")
{
    MBasisCertificate k5 = verify_reference_basis("K5");
    CHECK(k5.dual_laplacian.row(2) == make_vector({-2, 0, 4, -3, -1, 0}));
    std::vector<std::size_t> supports;
    for (const auto& f : k5.basis)
        supports.push_back(static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](const Integer& x) {
            return sgn(x) != 0;
        })));
    CHECK(supports == std::vector<std::size_t>{4, 4, 4, 5, 5, 3});

    MBasisCertificate k33 = verify_reference_basis("K33");
    CHECK(k33.dual_laplacian == IntMatrix{{4, -2, 0, -1}, {-2, 4, -3, -1}, {0, -3, 6, 0}, {-1, -1, 0, 4}});
    CHECK_THROWS_AS(reference_basis("K7"), Error);

    // Reference K5 basis and the saturated kernel span the same lattice.
    ReferenceBasis ref = reference_basis("K5");
    CHECK(same_lattice(IntMatrix::from_columns(ref.basis, 10), integer_kernel_basis(incidence_matrix(ref.graph))));
}
