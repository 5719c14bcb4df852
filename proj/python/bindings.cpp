#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclefire/circuits.hpp"
#include "cyclefire/errors.hpp"
#include "cyclefire/firing.hpp"
#include "cyclefire/graph.hpp"
#include "cyclefire/io.hpp"
#include "cyclefire/linalg.hpp"
#include "cyclefire/mbasis.hpp"
#include "cyclefire/reference_bases.hpp"

namespace py = pybind11;
using namespace cyclefire;

// Arbitrary-precision integers cross the boundary as Python ints, via decimal strings.
namespace pybind11::detail {

template <>
struct type_caster<Integer> {
    PYBIND11_TYPE_CASTER(Integer, const_name("int"));

    bool load(handle src, bool)
    {
        if (!src || !PyLong_Check(src.ptr()))
            return false;
        value = Integer(py::str(src).cast<std::string>());
        return true;
    }

    static handle cast(const Integer& x, return_value_policy, handle)
    {
        return PyLong_FromString(x.get_str().c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<IntMatrix> {
    PYBIND11_TYPE_CASTER(IntMatrix, const_name("list[list[int]]"));

    bool load(handle src, bool convert)
    {
        if (!isinstance<sequence>(src) || isinstance<str>(src))
            return false;
        std::vector<IntVector> rows;
        make_caster<std::vector<IntVector>> rows_caster;
        if (!rows_caster.load(src, convert))
            return false;
        rows = cast_op<std::vector<IntVector>&&>(std::move(rows_caster));
        const std::size_t width = rows.empty() ? 0 : rows.front().size();
        for (const auto& r : rows)
            if (r.size() != width)
                throw DimensionError("matrix rows have different lengths");
        value = IntMatrix::from_rows(rows, width);
        return true;
    }

    static handle cast(const IntMatrix& m, return_value_policy, handle)
    {
        py::list out;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            py::list row;
            for (std::size_t j = 0; j < m.cols(); ++j)
                row.append(py::reinterpret_steal<py::object>(make_caster<Integer>::cast(m(i, j), {}, {})));
            out.append(row);
        }
        return out.release();
    }
};

} // namespace pybind11::detail

namespace {

py::dict certificate_dict(const MBasisCertificate& c)
{
    py::dict d;
    d["basis"] = c.basis;
    d["dual_laplacian"] = c.dual_laplacian;
    d["pairwise_products"] = c.pairwise_products;
    return d;
}

SearchConstraints constraints(std::optional<std::size_t> max_len, std::set<std::size_t> exact_lens,
                              std::uint64_t budget, const std::string& order, std::uint64_t seed)
{
    SearchConstraints c;
    c.max_len = max_len;
    c.exact_lens = std::move(exact_lens);
    c.node_budget = budget;
    c.seed = seed;
    if (order == "ascending")
        c.order = CircuitOrder::ascending;
    else if (order == "descending")
        c.order = CircuitOrder::descending;
    else if (order == "shuffled")
        c.order = CircuitOrder::shuffled;
    else
        throw DimensionError("unknown circuit order '" + order + "'");
    return c;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Cycle chip-firing: dual Laplacians, M-bases and z-superstables";

    auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<GraphError>(m, "GraphError", error);
    py::register_exception<DimensionError>(m, "DimensionError", error);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", error);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", error);
    py::register_exception<DependentVectorsError>(m, "DependentVectorsError", error);
    py::register_exception<NotPlanarError>(m, "NotPlanarError", error);
    py::register_exception<NotMMatrixError>(m, "NotMMatrixError", error);
    py::register_exception<NotAvalancheFiniteError>(m, "NotAvalancheFiniteError", error);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges, int root, bool lex,
                         std::optional<RotationSystem> rotation) {
                 return Graph(n, edges, root, lex ? EdgeOrder::lex : EdgeOrder::input, std::move(rotation));
             }),
             py::arg("vertices"), py::arg("edges"), py::arg("root") = 0, py::arg("lex_order") = false,
             py::arg("rotation") = std::nullopt)
        .def_static("from_json", &load_graph, py::arg("document"))
        .def_property_readonly("vertex_count", &Graph::vertex_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("root", &Graph::root)
        .def_property_readonly("edges",
                               [](const Graph& g) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& e : g.edges())
                                       out.emplace_back(e.tail, e.head);
                                   return out;
                               })
        .def("to_json", [](const Graph& g) { return to_json(g).dump(); })
        .def("__repr__", [](const Graph& g) {
            return "Graph(vertices=" + std::to_string(g.vertex_count()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("incidence_matrix", &incidence_matrix);
    m.def("reduced_laplacian", &reduced_laplacian);
    m.def("genus", &genus);
    m.def("spanning_tree_count", &spanning_tree_count);
    m.def("critical_group", &critical_group);
    m.def("fundamental_cycle_basis", [](const Graph& g) { return fundamental_cycle_basis(g); });
    m.def("face_basis", [](const Graph& g) {
        FlowBasis out;
        for (const auto& f : trace_faces(g).bounded)
            out.push_back(f.flow);
        return out;
    });

    m.def("determinant", &determinant);
    m.def("invariant_factors", [](const IntMatrix& a) { return snf(a).invariant_factors(); });
    m.def("hnf", [](const IntMatrix& a) { return hnf(a).h; });
    m.def("integer_gram_schmidt", [](const std::vector<IntVector>& vs) { return integer_gram_schmidt(vs); });
    m.def("mbasis_transform", [](const std::vector<IntVector>& vs) { return certificate_dict(mbasis_transform(vs)); });
    m.def("dual_laplacian", [](const std::vector<IntVector>& vs) { return dual_laplacian(vs); });
    m.def("is_z_matrix", &is_z_matrix);
    m.def("is_m_matrix", [](const IntMatrix& l) { return is_m_matrix(l).is_m_matrix; });
    m.def("is_cycle_m_basis", [](const Graph& g, const std::vector<IntVector>& vs) {
        CycleMBasisDiagnosis d = is_cycle_m_basis(g, vs);
        py::dict out;
        out["valid"] = d.valid;
        out["failure"] = to_string(d.failure);
        out["message"] = d.message;
        out["witness"] = d.witness;
        return out;
    });

    m.def("fire_multiset", [](const IntVector& c, const IntMatrix& l, const IntVector& z) {
        return fire_multiset(c, RedistributionMatrix(l), z);
    });
    m.def(
        "stabilize",
        [](const IntVector& c, const IntMatrix& l, std::uint64_t cap) {
            StabilizeResult r = stabilize(c, RedistributionMatrix(l), cap);
            return py::make_tuple(r.stable, r.firing_counts, r.fires);
        },
        py::arg("config"), py::arg("matrix"), py::arg("cap") = default_fire_cap);
    m.def("is_set_superstable",
          [](const IntVector& c, const IntMatrix& l) { return is_set_superstable(c, RedistributionMatrix(l)); });
    m.def("check_z_superstable", [](const IntVector& c, const IntMatrix& l) {
        ZSuperstableVerdict v = check_z_superstable(c, RedistributionMatrix(l));
        return py::make_tuple(v.superstable, v.witness);
    });
    m.def("z_superstable_representative", [](const IntVector& c, const IntMatrix& l) {
        return z_superstable_representative(c, RedistributionMatrix(l));
    });
    m.def("enumerate_z_superstables",
          [](const IntMatrix& l) { return enumerate_z_superstables(RedistributionMatrix(l)); });
    m.def("classical_superstables", &classical_superstables);
    m.def("classical_criticals", &classical_criticals);
    m.def("degree_histogram", [](const std::vector<ChipConfig>& cs) { return degree_histogram(cs); });
    m.def("maximal_elements", [](const std::vector<ChipConfig>& cs) { return maximal_elements(cs); });

    m.def(
        "find_circuit_m_basis",
        [](const Graph& g, std::optional<std::size_t> max_len, std::set<std::size_t> exact_lens,
           std::uint64_t budget, const std::string& order, std::uint64_t seed) {
            SearchReport r = find_circuit_m_basis(g, constraints(max_len, std::move(exact_lens), budget, order, seed));
            py::dict out;
            out["status"] = to_string(r.status);
            out["nodes"] = r.nodes;
            out["circuits_considered"] = r.circuits_considered;
            if (r.certificate) {
                out["certificate"] = certificate_dict(*r.certificate);
                std::vector<std::vector<int>> circuits;
                for (const auto& c : r.chosen)
                    circuits.push_back(c.vertices);
                out["circuits"] = circuits;
            }
            return out;
        },
        py::arg("graph"), py::arg("max_len") = std::nullopt, py::arg("exact_lens") = std::set<std::size_t>{},
        py::arg("budget") = SearchConstraints{}.node_budget, py::arg("order") = "ascending", py::arg("seed") = 0);

    m.def("reference_basis_names", &reference_basis_names);
    m.def("reference_basis", [](const std::string& name) {
        ReferenceBasis r = reference_basis(name);
        py::dict out;
        out["name"] = r.name;
        out["graph"] = r.graph;
        out["basis"] = r.basis;
        out["dual_laplacian"] = r.printed_dual_laplacian;
        return out;
    });
}
