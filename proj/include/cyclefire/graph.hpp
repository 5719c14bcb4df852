#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclefire/matrix.hpp"

namespace cyclefire {

/// An edge {tail, head} with tail < head. It is oriented tail -> head, so its
/// incidence column carries -1 at `tail` and +1 at `head`.
struct Edge {
    int tail = 0;
    int head = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class EdgeOrder { input, lex };

/// Cyclic neighbor order around every vertex.
using RotationSystem = std::vector<std::vector<int>>;

/// Connected simple graph with a fixed edge order and a designated root.
/// Immutable after construction.
class Graph {
public:
    Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges, int root = 0,
          EdgeOrder order = EdgeOrder::input, std::optional<RotationSystem> rotation = std::nullopt);

    int vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    int root() const noexcept { return root_; }
    const std::optional<RotationSystem>& rotation() const noexcept { return rotation_; }

    /// Sorted neighbor list of `v`.
    const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    std::optional<std::size_t> edge_index(int u, int v) const;

    /// Non-root vertices in increasing order; these index classical configurations.
    std::vector<int> sites() const;
    std::size_t site_index(int vertex) const;

    Graph with_root(int root) const;

private:
    int vertex_count_;
    int root_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<std::size_t>> edge_ids_; // parallel to adjacency_
    std::optional<RotationSystem> rotation_;
};

/// Parses the JSON graph document
/// {"vertices": n, "edges": [[i,j],...], "root": r, "rotation": {...}, "edge_order": "input"|"lex"}.
Graph load_graph(std::string_view document);
Graph load_graph_file(const std::filesystem::path& path);

IntMatrix incidence_matrix(const Graph& g);
IntMatrix reduced_incidence(const Graph& g);
IntMatrix reduced_laplacian(const Graph& g);
/// |E| - |V| + 1.
std::size_t genus(const Graph& g);
/// det of the reduced Laplacian.
Integer spanning_tree_count(const Graph& g);

/// One circuit per non-tree edge: the edge itself with coefficient +1 closed
/// through the tree path back to its tail. `tree_edges` are edge indices;
/// without them a BFS tree from the root is used.
std::vector<IntVector> fundamental_cycle_basis(const Graph& g,
                                               const std::optional<std::vector<std::size_t>>& tree_edges = std::nullopt);

/// Edge indices of the BFS spanning tree from the root.
std::vector<std::size_t> bfs_tree(const Graph& g);

/// Signed edge vector of the closed walk v0 -> v1 -> ... -> v0.
IntVector walk_vector(const Graph& g, const std::vector<int>& closed_walk);

// Face tracing of an embedded graph -----------------------------------------

struct Face {
    std::vector<int> walk; // vertex sequence of the boundary walk, closing back to walk.front()
    IntVector flow;        // signed edge vector of the walk
    std::vector<std::size_t> edge_set() const;
};

struct FaceTracing {
    std::vector<Face> bounded;
    Face unbounded;
};

/// Traces the faces of the rotation system. The face with the longest boundary
/// (ties: lexicographically smallest edge set) is taken as the unbounded face.
/// Throws NotPlanarError if the Euler characteristic is not 2.
FaceTracing trace_faces(const Graph& g);

/// Reduced Laplacian of the planar dual multigraph, rooted at the unbounded
/// face; rows follow the order of `faces.bounded`. Built directly from
/// face/edge incidences.
IntMatrix dual_graph_reduced_laplacian(const Graph& g, const FaceTracing& faces);

} // namespace cyclefire
