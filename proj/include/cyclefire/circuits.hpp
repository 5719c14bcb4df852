#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cyclefire/graph.hpp"
#include "cyclefire/mbasis.hpp"

namespace cyclefire {

/// A simple cycle: `vertices` starts at its smallest vertex and continues
/// toward the smaller of that vertex's two cycle neighbors. `vector` is the
/// signed edge vector of that traversal.
struct Circuit {
    std::vector<int> vertices;
    IntVector vector;

    std::size_t length() const noexcept { return vertices.size(); }
};

/// All simple cycles with at most `max_len` vertices, ordered by length, then
/// by vertex sequence.
std::vector<Circuit> enumerate_circuits(const Graph& g, std::optional<std::size_t> max_len = std::nullopt);

enum class CircuitOrder { ascending, descending, shuffled };

struct SearchConstraints {
    std::optional<std::size_t> max_len;
    std::set<std::size_t> exact_lens; // empty: every length allowed
    std::uint64_t node_budget = 50'000'000;
    CircuitOrder order = CircuitOrder::ascending;
    std::uint64_t seed = 0; // used by CircuitOrder::shuffled
    bool require_full_span = true;

    /// Throws DimensionError for lengths below 3 or a zero budget.
    void validate() const;
};

enum class SearchStatus { found, infeasible, inconclusive };

struct SearchReport {
    SearchStatus status = SearchStatus::infeasible;
    std::optional<MBasisCertificate> certificate;
    std::vector<Circuit> chosen; // oriented as they enter the basis
    std::uint64_t nodes = 0;
    std::size_t circuits_considered = 0;
    double seconds = 0;
};

/// Depth-first search for genus(g) signed circuits with pairwise non-positive
/// products, independent, and with Gram determinant equal to the spanning-tree
/// count. `infeasible` means the constrained tree was exhausted; `inconclusive`
/// means the node budget ran out first.
SearchReport find_circuit_m_basis(const Graph& g, const SearchConstraints& cons = {});

struct PlanarCircuitBasis {
    MBasisCertificate certificate;
    FaceTracing faces;
    IntMatrix dual_graph_laplacian; // reduced Laplacian of the dual graph, rooted at the unbounded face
    bool matches_dual_graph = false;
};

/// Bounded faces of the embedding as a circuit basis. Throws NotPlanarError.
PlanarCircuitBasis planar_circuit_m_basis(const Graph& g);

std::string to_string(SearchStatus s);

} // namespace cyclefire
