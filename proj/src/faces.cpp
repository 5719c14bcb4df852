#include <algorithm>
#include <map>

#include "cyclefire/errors.hpp"
#include "cyclefire/graph.hpp"

namespace cyclefire {

std::vector<std::size_t> Face::edge_set() const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < flow.size(); ++k)
        if (sgn(flow[k]) != 0)
            out.push_back(k);
    return out;
}

namespace {

// Dart 2k runs tail -> head of edge k, dart 2k+1 runs head -> tail.
struct Darts {
    const Graph& g;
    int from(std::size_t d) const
    {
        const Edge& e = g.edges()[d / 2];
        return d % 2 == 0 ? e.tail : e.head;
    }
    int to(std::size_t d) const
    {
        const Edge& e = g.edges()[d / 2];
        return d % 2 == 0 ? e.head : e.tail;
    }
    std::size_t dart(int u, int v) const
    {
        std::size_t k = *g.edge_index(u, v);
        return 2 * k + (u < v ? 0 : 1);
    }
};

struct TracedFaces {
    std::vector<std::vector<std::size_t>> darts;
    std::vector<std::size_t> face_of_dart;
};

TracedFaces trace(const Graph& g)
{
    const RotationSystem& rot = *g.rotation();
    Darts darts{g};
    // Position of each neighbor within the rotation at v.
    std::vector<std::map<int, std::size_t>> position(rot.size());
    for (std::size_t v = 0; v < rot.size(); ++v)
        for (std::size_t i = 0; i < rot[v].size(); ++i)
            position[v][rot[v][i]] = i;

    auto next = [&](std::size_t d) {
        const int u = darts.from(d), v = darts.to(d);
        const auto& around = rot[static_cast<std::size_t>(v)];
        const std::size_t i = position[static_cast<std::size_t>(v)].at(u);
        return darts.dart(v, around[(i + 1) % around.size()]);
    };

    constexpr auto unassigned = static_cast<std::size_t>(-1);
    TracedFaces out;
    out.face_of_dart.assign(2 * g.edge_count(), unassigned);
    for (std::size_t start = 0; start < out.face_of_dart.size(); ++start) {
        if (out.face_of_dart[start] != unassigned)
            continue;
        std::vector<std::size_t> face;
        std::size_t d = start;
        do {
            out.face_of_dart[d] = out.darts.size();
            face.push_back(d);
            d = next(d);
        } while (d != start);
        out.darts.push_back(std::move(face));
    }
    return out;
}

} // namespace

FaceTracing trace_faces(const Graph& g)
{
    if (!g.rotation())
        throw NotPlanarError("graph has no rotation system");
    if (g.edge_count() == 0)
        return FaceTracing{{}, Face{{g.root()}, {}}};

    TracedFaces traced = trace(g);
    const long euler = static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) +
                       static_cast<long>(traced.darts.size());
    if (euler != 2)
        throw NotPlanarError("rotation system not planar: V - E + F = " + std::to_string(euler));

    Darts darts{g};
    std::vector<Face> faces;
    for (const auto& face_darts : traced.darts) {
        Face f;
        for (std::size_t d : face_darts)
            f.walk.push_back(darts.from(d));
        f.flow = walk_vector(g, f.walk);
        faces.push_back(std::move(f));
    }

    std::size_t outer = 0;
    for (std::size_t i = 1; i < faces.size(); ++i) {
        const auto li = faces[i].walk.size(), lo = faces[outer].walk.size();
        if (li > lo || (li == lo && faces[i].edge_set() < faces[outer].edge_set()))
            outer = i;
    }
    FaceTracing out;
    out.unbounded = faces[outer];
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (i != outer)
            out.bounded.push_back(std::move(faces[i]));
    return out;
}

IntMatrix dual_graph_reduced_laplacian(const Graph& g, const FaceTracing& faces)
{
    const std::size_t nb = faces.bounded.size();
    constexpr auto none = static_cast<std::size_t>(-1);
    // Dual vertex owning each dart, read off the boundary walks: bounded faces
    // are 0..nb-1 and the unbounded face is nb.
    std::vector<std::size_t> forward(g.edge_count(), none), backward(g.edge_count(), none);
    auto claim = [&](const Face& f, std::size_t id) {
        for (std::size_t i = 0; i < f.walk.size(); ++i) {
            const int a = f.walk[i], b = f.walk[(i + 1) % f.walk.size()];
            const std::size_t k = *g.edge_index(a, b);
            (a < b ? forward : backward)[k] = id;
        }
    };
    for (std::size_t i = 0; i < nb; ++i)
        claim(faces.bounded[i], i);
    if (g.edge_count() > 0)
        claim(faces.unbounded, nb);

    IntMatrix full(nb + 1, nb + 1);
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const std::size_t a = forward[k], b = backward[k];
        if (a == none || b == none || a == b) // a bridge is a loop in the dual
            continue;
        full(a, a) += 1;
        full(b, b) += 1;
        full(a, b) -= 1;
        full(b, a) -= 1;
    }
    IntMatrix reduced(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            reduced(i, j) = full(i, j);
    return reduced;
}

} // namespace cyclefire
