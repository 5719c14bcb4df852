#include "cyclefire/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cyclefire/errors.hpp"
#include "cyclefire/linalg.hpp"

namespace cyclefire {

namespace {

std::string edge_name(int u, int v) { return "{" + std::to_string(u) + "," + std::to_string(v) + "}"; }

} // namespace

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges, int root, EdgeOrder order,
             std::optional<RotationSystem> rotation)
    : vertex_count_(vertex_count), root_(root), rotation_(std::move(rotation))
{
    using Kind = GraphError::Kind;
    if (vertex_count_ < 1)
        throw GraphError(Kind::vertex_out_of_range, "graph must have at least one vertex");
    if (root_ < 0 || root_ >= vertex_count_)
        throw GraphError(Kind::bad_root, "root " + std::to_string(root_) + " is not a vertex");

    std::map<Edge, std::size_t> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [u, v] = edges[k];
        for (int x : {u, v})
            if (x < 0 || x >= vertex_count_)
                throw GraphError(Kind::vertex_out_of_range, "edge " + std::to_string(k) + " " + edge_name(u, v) +
                                                                ": vertex " + std::to_string(x) + " out of range");
        if (u == v)
            throw GraphError(Kind::self_loop,
                             "edge " + std::to_string(k) + ": self-loop at vertex " + std::to_string(u));
        Edge e{std::min(u, v), std::max(u, v)};
        if (auto it = seen.find(e); it != seen.end())
            throw GraphError(Kind::duplicate_edge, "duplicate edge " + edge_name(e.tail, e.head) + " (entries " +
                                                       std::to_string(it->second) + " and " + std::to_string(k) +
                                                       ")");
        seen.emplace(e, k);
        edges_.push_back(e);
    }
    if (order == EdgeOrder::lex)
        std::sort(edges_.begin(), edges_.end());

    adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
    edge_ids_.assign(static_cast<std::size_t>(vertex_count_), {});
    {
        std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(vertex_count_));
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            adj[static_cast<std::size_t>(edges_[k].tail)].emplace_back(edges_[k].head, k);
            adj[static_cast<std::size_t>(edges_[k].head)].emplace_back(edges_[k].tail, k);
        }
        for (std::size_t v = 0; v < adj.size(); ++v) {
            std::sort(adj[v].begin(), adj[v].end());
            for (auto [w, k] : adj[v]) {
                adjacency_[v].push_back(w);
                edge_ids_[v].push_back(k);
            }
        }
    }

    std::vector<bool> reached(static_cast<std::size_t>(vertex_count_), false);
    std::deque<int> queue{root_};
    reached[static_cast<std::size_t>(root_)] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : neighbors(v))
            if (!reached[static_cast<std::size_t>(w)]) {
                reached[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
    }
    for (int v = 0; v < vertex_count_; ++v)
        if (!reached[static_cast<std::size_t>(v)])
            throw GraphError(Kind::disconnected, "disconnected graph: vertex " + std::to_string(v) +
                                                     " is unreachable from root " + std::to_string(root_));

    if (rotation_) {
        if (rotation_->size() != static_cast<std::size_t>(vertex_count_))
            throw GraphError(Kind::bad_rotation, "rotation system lists " + std::to_string(rotation_->size()) +
                                                     " vertices, graph has " + std::to_string(vertex_count_));
        for (int v = 0; v < vertex_count_; ++v) {
            auto order_v = (*rotation_)[static_cast<std::size_t>(v)];
            std::sort(order_v.begin(), order_v.end());
            if (order_v != neighbors(v))
                throw GraphError(Kind::bad_rotation, "rotation at vertex " + std::to_string(v) +
                                                         " is not a permutation of its neighbors");
        }
    }
}

std::optional<std::size_t> Graph::edge_index(int u, int v) const
{
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
        return std::nullopt;
    const auto& nb = adjacency_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v)
        return std::nullopt;
    return edge_ids_[static_cast<std::size_t>(u)][static_cast<std::size_t>(it - nb.begin())];
}

std::vector<int> Graph::sites() const
{
    std::vector<int> s;
    for (int v = 0; v < vertex_count_; ++v)
        if (v != root_)
            s.push_back(v);
    return s;
}

std::size_t Graph::site_index(int vertex) const
{
    if (vertex < 0 || vertex >= vertex_count_ || vertex == root_)
        throw DimensionError("vertex " + std::to_string(vertex) + " is not a non-root site");
    return static_cast<std::size_t>(vertex < root_ ? vertex : vertex - 1);
}

Graph Graph::with_root(int root) const
{
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : edges_)
        pairs.emplace_back(e.tail, e.head);
    return Graph(vertex_count_, pairs, root, EdgeOrder::input, rotation_);
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

long parse_int(const json& j, const std::string& what)
{
    if (j.is_number_integer())
        return j.get<long>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        std::size_t pos = 0;
        try {
            long x = std::stol(s, &pos);
            if (pos == s.size())
                return x;
        } catch (const std::exception&) {
        }
    }
    throw ParseError(what + ": expected an integer, got " + j.dump());
}

} // namespace

Graph load_graph(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("graph document must be a JSON object");
    if (!doc.contains("vertices"))
        throw ParseError("graph document: missing \"vertices\"");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("graph document: missing \"edges\" array");

    const int n = static_cast<int>(parse_int(doc["vertices"], "vertices"));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
        const json& e = doc["edges"][k];
        if (!e.is_array() || e.size() != 2)
            throw ParseError("edge " + std::to_string(k) + ": expected a pair, got " + e.dump());
        edges.emplace_back(static_cast<int>(parse_int(e[0], "edge " + std::to_string(k))),
                           static_cast<int>(parse_int(e[1], "edge " + std::to_string(k))));
    }
    int root = doc.contains("root") ? static_cast<int>(parse_int(doc["root"], "root")) : 0;

    EdgeOrder order = EdgeOrder::input;
    if (doc.contains("edge_order")) {
        const json& o = doc["edge_order"];
        if (o == "lex")
            order = EdgeOrder::lex;
        else if (o != "input")
            throw ParseError("edge_order must be \"input\" or \"lex\", got " + o.dump());
    }

    std::optional<RotationSystem> rotation;
    if (doc.contains("rotation") && !doc["rotation"].is_null()) {
        const json& r = doc["rotation"];
        RotationSystem rot(static_cast<std::size_t>(std::max(n, 0)));
        auto read_list = [&](std::size_t v, const json& list) {
            if (!list.is_array())
                throw ParseError("rotation at vertex " + std::to_string(v) + " must be an array");
            for (const auto& w : list)
                rot[v].push_back(static_cast<int>(parse_int(w, "rotation at vertex " + std::to_string(v))));
        };
        if (r.is_object()) {
            for (auto it = r.begin(); it != r.end(); ++it) {
                long v = parse_int(json(it.key()), "rotation key");
                if (v < 0 || v >= n)
                    throw ParseError("rotation key " + it.key() + " is not a vertex");
                read_list(static_cast<std::size_t>(v), it.value());
            }
        } else if (r.is_array()) {
            if (r.size() != rot.size())
                throw ParseError("rotation array must have one entry per vertex");
            for (std::size_t v = 0; v < r.size(); ++v)
                read_list(v, r[v]);
        } else {
            throw ParseError("rotation must be an object or an array");
        }
        rotation = std::move(rot);
    }
    return Graph(n, edges, root, order, std::move(rotation));
}

Graph load_graph_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str());
}

// ---------------------------------------------------------------------------

IntMatrix incidence_matrix(const Graph& g)
{
    IntMatrix d(static_cast<std::size_t>(g.vertex_count()), g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        d(static_cast<std::size_t>(g.edges()[k].tail), k) = -1;
        d(static_cast<std::size_t>(g.edges()[k].head), k) = 1;
    }
    return d;
}

IntMatrix reduced_incidence(const Graph& g)
{
    IntMatrix full = incidence_matrix(g);
    IntMatrix d(full.rows() - 1, full.cols());
    std::size_t out = 0;
    for (std::size_t r = 0; r < full.rows(); ++r) {
        if (static_cast<int>(r) == g.root())
            continue;
        for (std::size_t c = 0; c < full.cols(); ++c)
            d(out, c) = full(r, c);
        ++out;
    }
    return d;
}

IntMatrix reduced_laplacian(const Graph& g)
{
    IntMatrix d = reduced_incidence(g);
    return d * d.transpose();
}

std::size_t genus(const Graph& g) { return g.edge_count() + 1 - static_cast<std::size_t>(g.vertex_count()); }

Integer spanning_tree_count(const Graph& g) { return determinant(reduced_laplacian(g)); }

std::vector<std::size_t> bfs_tree(const Graph& g)
{
    std::vector<std::size_t> tree;
    std::vector<bool> reached(static_cast<std::size_t>(g.vertex_count()), false);
    std::deque<int> queue{g.root()};
    reached[static_cast<std::size_t>(g.root())] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v))
            if (!reached[static_cast<std::size_t>(w)]) {
                reached[static_cast<std::size_t>(w)] = true;
                tree.push_back(*g.edge_index(v, w));
                queue.push_back(w);
            }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

IntVector walk_vector(const Graph& g, const std::vector<int>& closed_walk)
{
    IntVector f(g.edge_count());
    for (std::size_t i = 0; i < closed_walk.size(); ++i) {
        int a = closed_walk[i];
        int b = closed_walk[(i + 1) % closed_walk.size()];
        auto k = g.edge_index(a, b);
        if (!k)
            throw DimensionError("walk step " + edge_name(a, b) + " is not an edge");
        f[*k] += a < b ? 1 : -1;
    }
    return f;
}

std::vector<IntVector> fundamental_cycle_basis(const Graph& g, const std::optional<std::vector<std::size_t>>& tree_edges)
{
    std::vector<std::size_t> tree = tree_edges ? *tree_edges : bfs_tree(g);
    const auto n = static_cast<std::size_t>(g.vertex_count());

    std::vector<bool> in_tree(g.edge_count(), false);
    for (std::size_t k : tree) {
        if (k >= g.edge_count())
            throw InvalidSpanningTreeError("tree edge index " + std::to_string(k) + " out of range");
        if (in_tree[k])
            throw InvalidSpanningTreeError("tree edge index " + std::to_string(k) + " listed twice");
        in_tree[k] = true;
    }
    if (tree.size() + 1 != n)
        throw InvalidSpanningTreeError("a spanning tree needs " + std::to_string(n - 1) + " edges, got " +
                                       std::to_string(tree.size()));

    // Root the tree and record parents; a cycle or missed vertex means it is not spanning.
    std::vector<std::vector<int>> tree_adj(n);
    for (std::size_t k : tree) {
        tree_adj[static_cast<std::size_t>(g.edges()[k].tail)].push_back(g.edges()[k].head);
        tree_adj[static_cast<std::size_t>(g.edges()[k].head)].push_back(g.edges()[k].tail);
    }
    std::vector<int> parent(n, -1), depth(n, -1);
    std::deque<int> queue{g.root()};
    depth[static_cast<std::size_t>(g.root())] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : tree_adj[static_cast<std::size_t>(v)])
            if (depth[static_cast<std::size_t>(w)] < 0) {
                depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
                parent[static_cast<std::size_t>(w)] = v;
                queue.push_back(w);
            }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (depth[v] < 0)
            throw InvalidSpanningTreeError("edge set does not reach vertex " + std::to_string(v));

    std::vector<IntVector> basis;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        if (in_tree[k])
            continue;
        const Edge e = g.edges()[k];
        // Walk tail -> head along the edge, then head back to tail inside the tree.
        std::vector<int> up_from_head{e.head}, up_from_tail{e.tail};
        int a = e.head, b = e.tail;
        while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
                a = parent[static_cast<std::size_t>(a)];
                up_from_head.push_back(a);
            } else {
                b = parent[static_cast<std::size_t>(b)];
                up_from_tail.push_back(b);
            }
        }
        std::vector<int> walk{e.tail};
        walk.insert(walk.end(), up_from_head.begin(), up_from_head.end());
        walk.pop_back(); // the meeting vertex is re-added from the tail side
        walk.insert(walk.end(), up_from_tail.rbegin(), up_from_tail.rend() - 1);
        basis.push_back(walk_vector(g, walk));
    }
    return basis;
}

} // namespace cyclefire
