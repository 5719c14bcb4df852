#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclefire/graph.hpp"
#include "cyclefire/matrix.hpp"

namespace cyclefire {

/// Ordered list of edge-indexed integer flows, the columns of the basis matrix.
using FlowBasis = std::vector<IntVector>;

/// Orthogonalizes `vs` without leaving the integers:
///   q_i = (prod_{j<i} |q_j|^2) * (v_i - sum_{j<i} (v_i . q_j / |q_j|^2) q_j).
/// Each q_i lies in the integer span of v_1..v_i. Throws DependentVectorsError
/// naming the first dependent input.
std::vector<IntVector> integer_gram_schmidt(std::span<const IntVector> vs);

/// A lattice basis whose pairwise products are all non-positive.
struct MBasisCertificate {
    FlowBasis basis;
    IntMatrix dual_laplacian;    // Gram matrix computed as B^T B
    IntMatrix pairwise_products; // f_i . f_j computed one dot product at a time
};

/// Rewrites a lattice basis v_1..v_n into f_1..f_n spanning the same lattice
/// with f_i . f_j <= 0 for i != j. Uses the integer Gram-Schmidt vectors q_j:
///   f_{k+1} = v_{k+1} + sum_j t_j q_j,   t_j = floor(-f_j . a_j / (f_j . q_j)),
/// where a_1 = v_{k+1} and a_{j+1} = a_j + t_j q_j.
MBasisCertificate mbasis_transform(std::span<const IntVector> vs);

/// Gram matrix of the basis vectors.
IntMatrix dual_laplacian(std::span<const IntVector> basis);

bool is_z_matrix(const IntMatrix& l);

struct MMatrixReport {
    bool is_m_matrix = false;
    bool z_matrix = false;
    bool nonsingular = false;
    bool inverse_nonnegative = false;
    /// Certifies "x >= 0 with L x > 0" when present: x = L^{-1} * 1.
    std::optional<RationalVector> positive_witness;
    std::optional<RationalMatrix> inverse;
    std::string reason;
};

/// Decides the (non-singular) M-matrix property through the exact inverse.
MMatrixReport is_m_matrix(const IntMatrix& l);

struct CycleMBasisDiagnosis {
    enum class Failure { none, wrong_count, not_a_flow, not_full_lattice, not_z_matrix };

    bool valid = false;
    Failure failure = Failure::none;
    std::vector<std::size_t> witness; // offending vector index, or the (i, j) pair of a positive product
    IntMatrix gram;
    Integer gram_determinant;
    Integer tree_count;
    std::string message;
};

/// Checks that `vectors` is a basis of the flow lattice of g whose Gram matrix
/// is a Z-matrix. Throws DimensionError if a vector is not edge-indexed for g.
CycleMBasisDiagnosis is_cycle_m_basis(const Graph& g, std::span<const IntVector> vectors);

std::string to_string(CycleMBasisDiagnosis::Failure f);

} // namespace cyclefire
