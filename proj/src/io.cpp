#include "cyclefire/io.hpp"

#include <fstream>
#include <sstream>

#include "cyclefire/errors.hpp"
#include "cyclefire/linalg.hpp"

namespace cyclefire {

json to_json(const Integer& x) { return x.get_str(); }

json to_json(const Rational& x) { return x.get_str(); }

json to_json(std::span<const Integer> v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(x.get_str());
    return out;
}

json to_json(std::span<const Rational> v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(x.get_str());
    return out;
}

json to_json(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(to_json(m.row(r)));
    return out;
}

json to_json(const Graph& g)
{
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.tail, e.head});
    json out = {{"vertices", g.vertex_count()}, {"edges", edges}, {"root", g.root()}, {"edge_order", "input"}};
    if (g.rotation()) {
        json rot = json::object();
        for (std::size_t v = 0; v < g.rotation()->size(); ++v)
            rot[std::to_string(v)] = (*g.rotation())[v];
        out["rotation"] = rot;
    }
    return out;
}

Integer parse_integer(const json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) == 0)
            return x;
    }
    throw ParseError(what + ": expected an integer, got " + j.dump());
}

IntVector parse_int_vector(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw ParseError(what + ": expected an array, got " + j.dump());
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_integer(j[i], what + "[" + std::to_string(i) + "]"));
    return v;
}

IntVector parse_int_list(std::string_view text)
{
    IntVector v;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw ParseError("empty entry in list '" + std::string(text) + "'");
        Integer x;
        if (x.set_str(item.substr(first, last - first + 1), 10) != 0)
            throw ParseError("'" + item + "' is not an integer");
        v.push_back(std::move(x));
    }
    return v;
}

BasisDocument load_basis(std::string_view document, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("basis document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vectors"))
        throw ParseError("basis document: missing \"vectors\"");

    BasisDocument out;
    if (doc.contains("graph") && !doc["graph"].is_null()) {
        const json& g = doc["graph"];
        if (g.is_string()) {
            std::filesystem::path p = g.get<std::string>();
            out.graph = load_graph_file(p.is_absolute() ? p : base_dir / p);
        } else if (g.is_object()) {
            out.graph = load_graph(g.dump());
        } else {
            throw ParseError("basis document: \"graph\" must be a path or an object");
        }
    }
    const json& vs = doc["vectors"];
    if (!vs.is_array())
        throw ParseError("basis document: \"vectors\" must be an array");
    for (std::size_t i = 0; i < vs.size(); ++i)
        out.vectors.push_back(parse_int_vector(vs[i], "vector " + std::to_string(i)));
    if (out.graph)
        for (std::size_t i = 0; i < out.vectors.size(); ++i)
            if (out.vectors[i].size() != out.graph->edge_count())
                throw DimensionError("vector " + std::to_string(i) + " has length " +
                                     std::to_string(out.vectors[i].size()) + " but the graph has " +
                                     std::to_string(out.graph->edge_count()) + " edges");
    return out;
}

BasisDocument load_basis_file(const std::filesystem::path& path)
{
    return load_basis(read_text_file(path), path.parent_path());
}

json basis_to_json(const Graph& g, std::span<const IntVector> vectors)
{
    json vs = json::array();
    for (const auto& v : vectors)
        vs.push_back(to_json(v));
    return {{"graph", to_json(g)}, {"vectors", vs}};
}

json certificate_to_json(const Graph& g, const MBasisCertificate& cert)
{
    json out = basis_to_json(g, cert.basis);
    out["dual_laplacian"] = to_json(cert.dual_laplacian);
    out["pairwise_products"] = to_json(cert.pairwise_products);
    out["determinant"] = to_json(determinant(cert.dual_laplacian));
    out["is_m_matrix"] = is_m_matrix(cert.dual_laplacian).is_m_matrix;
    return out;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace cyclefire
