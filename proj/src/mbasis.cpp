#include "cyclefire/mbasis.hpp"

#include <set>
#include <sstream>

#include "cyclefire/errors.hpp"
#include "cyclefire/linalg.hpp"

namespace cyclefire {

namespace {

void check_uniform_lengths(std::span<const IntVector> vs)
{
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (vs[i].size() != vs[0].size())
            throw DimensionError("vector " + std::to_string(i) + " has length " + std::to_string(vs[i].size()) +
                                 ", expected " + std::to_string(vs[0].size()));
}

void axpy(IntVector& y, const Integer& t, const IntVector& x)
{
    if (sgn(t) == 0)
        return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (sgn(x[i]) != 0)
            y[i] += t * x[i];
}

} // namespace

std::vector<IntVector> integer_gram_schmidt(std::span<const IntVector> vs)
{
    check_uniform_lengths(vs);
    std::set<IntVector> seen;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (is_zero(vs[i]) || !seen.insert(vs[i]).second)
            throw DependentVectorsError(i);
    }

    std::vector<IntVector> qs;
    std::vector<Integer> norms; // |q_j|^2
    Integer product = 1;        // prod_{j<i} |q_j|^2
    for (std::size_t i = 0; i < vs.size(); ++i) {
        IntVector q(vs[i].size());
        for (std::size_t k = 0; k < q.size(); ++k)
            q[k] = product * vs[i][k];
        for (std::size_t j = 0; j < qs.size(); ++j) {
            // (product / |q_j|^2) is exact because |q_j|^2 is one of its factors.
            Integer coeff;
            mpz_divexact(coeff.get_mpz_t(), product.get_mpz_t(), norms[j].get_mpz_t());
            coeff *= dot(vs[i], qs[j]);
            axpy(q, -coeff, qs[j]);
        }
        if (is_zero(q))
            throw DependentVectorsError(i);
        norms.push_back(squared_norm(q));
        product *= norms.back();
        qs.push_back(std::move(q));
    }
    return qs;
}

MBasisCertificate mbasis_transform(std::span<const IntVector> vs)
{
    const std::vector<IntVector> qs = integer_gram_schmidt(vs);

    FlowBasis fs;
    std::vector<Integer> fq; // f_j . q_j, positive
    for (std::size_t k = 0; k < vs.size(); ++k) {
        IntVector a = vs[k];
        for (std::size_t j = 0; j < k; ++j) {
            Integer t = floor_div(-dot(fs[j], a), fq[j]);
            axpy(a, t, qs[j]);
        }
        Integer p = dot(a, qs[k]);
        if (sgn(p) <= 0)
            throw Error("internal: f . q is not positive at index " + std::to_string(k));
        fq.push_back(std::move(p));
        fs.push_back(std::move(a));
    }

    MBasisCertificate cert;
    cert.dual_laplacian = dual_laplacian(fs);
    cert.pairwise_products = IntMatrix(fs.size(), fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j)
            cert.pairwise_products(i, j) = dot(fs[i], fs[j]);
    cert.basis = std::move(fs);
    return cert;
}

IntMatrix dual_laplacian(std::span<const IntVector> basis)
{
    check_uniform_lengths(basis);
    return gram(basis);
}

bool is_z_matrix(const IntMatrix& l)
{
    if (!l.is_square())
        throw DimensionError("Z-matrix test on a non-square matrix");
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j)
            if (i != j && sgn(l(i, j)) > 0)
                return false;
    return true;
}

MMatrixReport is_m_matrix(const IntMatrix& l)
{
    MMatrixReport report;
    report.z_matrix = is_z_matrix(l);
    if (!report.z_matrix) {
        report.reason = "not a Z-matrix";
        return report;
    }
    report.inverse = try_rational_inverse(l);
    if (!report.inverse) {
        report.reason = "singular";
        return report;
    }
    report.nonsingular = true;
    const RationalMatrix& inv = *report.inverse;
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j)
            if (sgn(inv(i, j)) < 0) {
                report.reason = "inverse has a negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return report;
            }
    report.inverse_nonnegative = true;
    report.is_m_matrix = true;
    RationalVector x(inv.rows());
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j)
            x[i] += inv(i, j);
    report.positive_witness = std::move(x);
    report.reason = "inverse exists and is entrywise non-negative";
    return report;
}

std::string to_string(CycleMBasisDiagnosis::Failure f)
{
    using F = CycleMBasisDiagnosis::Failure;
    switch (f) {
    case F::none:
        return "none";
    case F::wrong_count:
        return "wrong_count";
    case F::not_a_flow:
        return "not_a_flow";
    case F::not_full_lattice:
        return "not_full_lattice";
    case F::not_z_matrix:
        return "not_z_matrix";
    }
    return "unknown";
}

CycleMBasisDiagnosis is_cycle_m_basis(const Graph& g, std::span<const IntVector> vectors)
{
    using F = CycleMBasisDiagnosis::Failure;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (vectors[i].size() != g.edge_count())
            throw DimensionError("vector " + std::to_string(i) + " has length " +
                                 std::to_string(vectors[i].size()) + " but the graph has " +
                                 std::to_string(g.edge_count()) + " edges");

    CycleMBasisDiagnosis diag;
    diag.tree_count = spanning_tree_count(g);
    const std::size_t expected = genus(g);
    if (vectors.size() != expected) {
        diag.failure = F::wrong_count;
        diag.message = "expected " + std::to_string(expected) + " vectors (the genus), got " +
                       std::to_string(vectors.size());
        return diag;
    }

    const IntMatrix boundary = incidence_matrix(g);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (!is_zero(boundary * vectors[i])) {
            diag.failure = F::not_a_flow;
            diag.witness = {i};
            diag.message = "vector " + std::to_string(i) + " is not in the kernel of the incidence matrix";
            return diag;
        }

    diag.gram = gram(vectors);
    diag.gram_determinant = determinant(diag.gram);
    if (diag.gram_determinant != diag.tree_count) {
        diag.failure = F::not_full_lattice;
        std::ostringstream os;
        os << "det(Gram) = " << diag.gram_determinant << " but the graph has " << diag.tree_count
           << " spanning trees";
        diag.message = os.str();
        return diag;
    }

    for (std::size_t i = 0; i < diag.gram.rows(); ++i)
        for (std::size_t j = i + 1; j < diag.gram.cols(); ++j)
            if (sgn(diag.gram(i, j)) > 0) {
                diag.failure = F::not_z_matrix;
                diag.witness = {i, j};
                std::ostringstream os;
                os << "Gram entry (" << i << "," << j << ") = " << diag.gram(i, j) << " is positive";
                diag.message = os.str();
                return diag;
            }

    diag.valid = true;
    diag.message = "cycle M-basis";
    return diag;
}

} // namespace cyclefire
