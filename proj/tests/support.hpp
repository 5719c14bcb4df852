#pragma once

// Shared fixtures and brute-force oracles. Nothing here calls into the
// algorithms being tested beyond constructing graphs and matrices.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclefire/graph.hpp"
#include "cyclefire/matrix.hpp"

namespace testsupport {

using cyclefire::Graph;
using cyclefire::IntMatrix;
using cyclefire::IntVector;
using cyclefire::Integer;
using EdgeList = std::vector<std::pair<int, int>>;

inline std::filesystem::path data_dir() { return CYCLEFIRE_TEST_DATA_DIR; }

inline Graph load(const std::string& name) { return cyclefire::load_graph_file(data_dir() / name); }

inline Graph diamond() { return load("diamond.json"); }

inline EdgeList complete_edges(int n)
{
    EdgeList e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return e;
}

inline Graph complete_graph(int n) { return Graph(n, complete_edges(n), 0, cyclefire::EdgeOrder::lex); }

inline Graph complete_bipartite(int m, int n)
{
    EdgeList e;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            e.emplace_back(i, m + j);
    return Graph(m + n, e, 0, cyclefire::EdgeOrder::lex);
}

inline Graph cycle_graph(int n)
{
    EdgeList e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return Graph(n, e, 0, cyclefire::EdgeOrder::lex);
}

inline bool connected(int n, const EdgeList& edges)
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int components = n;
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return components == 1;
}

/// Edge mask of the graph `mask` after relabelling vertex v as perm[v].
inline std::uint32_t relabel(const std::vector<std::vector<int>>& index, const EdgeList& all, std::uint32_t mask,
                             const std::vector<int>& perm)
{
    std::uint32_t out = 0;
    for (std::size_t k = 0; k < all.size(); ++k)
        if (mask >> k & 1U)
            out |= 1U << index[perm[all[k].first]][perm[all[k].second]];
    return out;
}

/// One representative per isomorphism class of connected simple graphs on
/// exactly n vertices (canonical form: smallest relabelled edge mask).
inline std::vector<EdgeList> connected_graphs(int n)
{
    const EdgeList all = complete_edges(n);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    for (std::size_t k = 0; k < all.size(); ++k)
        index[all[k].first][all[k].second] = index[all[k].second][all[k].first] = static_cast<int>(k);

    std::set<std::uint32_t> seen;
    std::vector<EdgeList> out;
    for (std::uint32_t mask = 0; mask < (1U << all.size()); ++mask) {
        EdgeList edges;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (mask >> k & 1U)
                edges.push_back(all[k]);
        if (!connected(n, edges))
            continue;
        std::uint32_t canon = mask;
        for (const auto& perm : perms)
            canon = std::min(canon, relabel(index, all, mask, perm));
        if (seen.insert(canon).second)
            out.push_back(edges);
    }
    return out;
}

/// Every connected simple graph with 1..max_n vertices, up to isomorphism.
inline const std::vector<Graph>& graph_corpus(int max_n)
{
    static std::map<int, std::vector<Graph>> cache;
    auto [it, fresh] = cache.try_emplace(max_n);
    if (fresh)
        for (int n = 1; n <= max_n; ++n)
            for (const auto& edges : connected_graphs(n))
                it->second.emplace_back(n, edges);
    return it->second;
}

/// Counts spanning trees by testing every (n-1)-edge subset for acyclicity.
inline std::uint64_t brute_force_tree_count(const Graph& g)
{
    const int n = g.vertex_count();
    const std::size_t m = g.edge_count();
    if (n == 1)
        return 1;
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + (n - 1), true);
    std::uint64_t count = 0;
    do {
        EdgeList edges;
        for (std::size_t k = 0; k < m; ++k)
            if (pick[k])
                edges.emplace_back(g.edges()[k].tail, g.edges()[k].head);
        if (connected(n, edges))
            ++count;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return count;
}

/// Simple cycles counted as vertex sequences over all permutations of vertex
/// subsets, divided by the 2k rotations and reflections of each cycle.
inline std::map<std::size_t, std::size_t> brute_force_cycle_counts(const Graph& g)
{
    const int n = g.vertex_count();
    std::map<std::size_t, std::size_t> counts;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1U)
                vs.push_back(v);
        if (vs.size() < 3)
            continue;
        std::size_t sequences = 0;
        do {
            bool closed = true;
            for (std::size_t i = 0; i < vs.size() && closed; ++i)
                closed = g.edge_index(vs[i], vs[(i + 1) % vs.size()]).has_value();
            sequences += closed;
        } while (std::next_permutation(vs.begin(), vs.end()));
        if (sequences)
            counts[vs.size()] += sequences / (2 * vs.size());
    }
    return counts;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    IntVector v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

/// Product of random elementary unimodular operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12)
{
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2)
        return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b)
            u.negate_row(a);
        else
            u.add_row_multiple(a, b, coeff(rng));
    }
    return u;
}

/// True iff some nonzero z with 0 <= z_i <= bound_i leaves c - L z >= 0.
inline bool brute_force_has_legal_multiset(const IntVector& c, const IntMatrix& l, const std::vector<long>& bound)
{
    const std::size_t n = c.size();
    std::vector<long> z(n, 0);
    for (;;) {
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (z[i] < bound[i]) {
                ++z[i];
                break;
            }
            z[i] = 0;
        }
        if (i == n)
            return false;
        bool legal = true;
        for (std::size_t r = 0; r < n && legal; ++r) {
            Integer v = c[r];
            for (std::size_t k = 0; k < n; ++k)
                v -= l(r, k) * z[k];
            legal = sgn(v) >= 0;
        }
        if (legal)
            return true;
    }
}

} // namespace testsupport
