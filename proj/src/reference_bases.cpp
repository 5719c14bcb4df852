#include "cyclefire/reference_bases.hpp"

#include <sstream>

#include "cyclefire/errors.hpp"

namespace cyclefire {

namespace {

std::vector<std::pair<int, int>> complete_graph_edges(int n)
{
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return edges;
}

std::vector<std::pair<int, int>> complete_bipartite_edges(int m, int n)
{
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            edges.emplace_back(i, m + j);
    return edges;
}

// Rows are edges, columns are basis vectors.
FlowBasis columns_of(const IntMatrix& iota) { return iota.columns(); }

ReferenceBasis k5()
{
    IntMatrix iota{
        {1, 0, -1, 0, 1, 0},  {0, -1, 0, 0, -1, 1}, {0, 0, 0, 1, 0, -1}, {-1, 1, 1, -1, 0, 0},
        {0, 1, -1, 1, 0, 0},  {1, 0, 0, -1, 0, 0},  {0, -1, 0, 0, 1, 0}, {0, 0, 0, 0, -1, 1},
        {0, 0, -1, 1, 0, 0},  {1, 0, 0, 0, -1, 0},
    };
    IntMatrix printed{
        {4, -1, -2, 0, 0, 0}, {-1, 4, 0, 0, 0, -1}, {-2, 0, 4, -3, -1, 0},
        {0, 0, -3, 5, 0, -1}, {0, 0, -1, 0, 5, -2}, {0, -1, 0, -1, -2, 3},
    };
    return {"K5", Graph(5, complete_graph_edges(5), 0, EdgeOrder::lex), columns_of(iota), printed};
}

ReferenceBasis k33()
{
    IntMatrix iota{
        {-1, 0, 1, 0}, {0, 1, -1, 0}, {1, -1, 0, 0}, {1, 0, 0, -1}, {0, -1, 1, 1},
        {-1, 1, -1, 0}, {0, 0, -1, 1}, {0, 0, 0, -1}, {0, 0, 1, 0},
    };
    IntMatrix printed{{4, -2, 0, -1}, {-2, 4, -3, -1}, {0, -3, 6, 0}, {-1, -1, 0, 4}};
    return {"K33", Graph(6, complete_bipartite_edges(3, 3), 0, EdgeOrder::lex), columns_of(iota), printed};
}

} // namespace

std::vector<std::string> reference_basis_names() { return {"K5", "K33"}; }

ReferenceBasis reference_basis(std::string_view name)
{
    if (name == "K5")
        return k5();
    if (name == "K33" || name == "K3,3")
        return k33();
    throw Error("unknown reference basis '" + std::string(name) + "'");
}

MBasisCertificate verify_reference_basis(std::string_view name)
{
    ReferenceBasis ref = reference_basis(name);
    CycleMBasisDiagnosis diag = is_cycle_m_basis(ref.graph, ref.basis);
    if (!diag.valid)
        throw Error(ref.name + " reference basis rejected: " + diag.message);

    MBasisCertificate cert;
    cert.dual_laplacian = dual_laplacian(ref.basis);
    cert.pairwise_products = IntMatrix(ref.basis.size(), ref.basis.size());
    for (std::size_t i = 0; i < ref.basis.size(); ++i)
        for (std::size_t j = 0; j < ref.basis.size(); ++j) {
            cert.pairwise_products(i, j) = dot(ref.basis[i], ref.basis[j]);
            if (cert.dual_laplacian(i, j) != ref.printed_dual_laplacian(i, j)) {
                std::ostringstream os;
                os << ref.name << " dual Laplacian entry (" << i << "," << j << ") is " << cert.dual_laplacian(i, j)
                   << ", printed " << ref.printed_dual_laplacian(i, j);
                throw Error(os.str());
            }
        }
    if (!is_m_matrix(cert.dual_laplacian).is_m_matrix)
        throw Error(ref.name + " dual Laplacian is not an M-matrix");
    cert.basis = std::move(ref.basis);
    return cert;
}

} // namespace cyclefire
