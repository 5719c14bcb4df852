#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cyclefire/matrix.hpp"

namespace cyclefire {

/// Row Hermite normal form: h = u * a with u unimodular. Pivots are positive,
/// entries above a pivot lie in [0, pivot), and the first `rank` rows are the
/// nonzero ones.
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

HermiteForm hnf(const IntMatrix& a);

/// Smith normal form: d = u * a * v with u, v unimodular and d diagonal.
/// The nonzero diagonal entries are positive and form a divisibility chain;
/// zero entries come last.
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    std::size_t rank = 0;

    /// The min(rows, cols) diagonal entries of d.
    IntVector invariant_factors() const { return d.diagonal(); }
    /// Invariant factors different from 1 (the cokernel's torsion plus free part).
    IntVector nontrivial_invariant_factors() const;
};

SmithForm snf(const IntMatrix& a);

/// Cokernel Z^n / a Z^n of a nonsingular square matrix, computed modulo
/// |det a| so entries stay small. c lies in a Z^n iff (u c)_i is divisible by
/// factors[i] for every i. Rows of u are only meaningful modulo |det a|.
struct CokernelMap {
    IntVector factors; // invariant factors, a divisibility chain
    IntMatrix u;

    IntVector nontrivial_factors() const;
};

/// Throws SingularMatrixError when a is singular, DimensionError when not square.
CokernelMap cokernel_map(const IntMatrix& a);

/// Columns form a basis of the saturated lattice {x in Z^n : a x = 0}.
IntMatrix integer_kernel_basis(const IntMatrix& a);

/// b^T b.
IntMatrix gram(const IntMatrix& b);
IntMatrix gram(std::span<const IntVector> vectors);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Throws SingularMatrixError when det(a) = 0.
RationalMatrix rational_inverse(const IntMatrix& a);
std::optional<RationalMatrix> try_rational_inverse(const IntMatrix& a);

/// Some rational x with a x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
std::optional<RationalVector> solve_rational(const IntMatrix& a, std::span<const Integer> b);

/// True iff the columns of b1 and b2 generate the same lattice.
bool same_lattice(const IntMatrix& b1, const IntMatrix& b2);

} // namespace cyclefire
