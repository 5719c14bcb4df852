#include "cyclefire/linalg.hpp"

#include <algorithm>
#include <utility>

#include "cyclefire/errors.hpp"

namespace cyclefire {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Index of the row at or below `from` with the smallest nonzero |m(row, col)|.
std::optional<std::size_t> smallest_in_column(const IntMatrix& m, std::size_t col, std::size_t from)
{
    std::optional<std::size_t> best;
    for (std::size_t r = from; r < m.rows(); ++r) {
        if (sgn(m(r, col)) == 0)
            continue;
        if (!best || cmpabs(m(r, col), m(*best, col)) < 0)
            best = r;
    }
    return best;
}

// Truncated quotient; |a - q b| < |b|.
Integer tquot(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

HermiteForm hnf(const IntMatrix& a)
{
    HermiteForm out{a, IntMatrix::identity(a.rows()), 0, {}};
    IntMatrix& h = out.h;
    IntMatrix& u = out.u;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        for (;;) {
            auto k = smallest_in_column(h, c, r);
            if (!k)
                break;
            h.swap_rows(*k, r);
            u.swap_rows(*k, r);
            bool cleared = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (sgn(h(i, c)) == 0)
                    continue;
                Integer q = tquot(h(i, c), h(r, c));
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
                if (sgn(h(i, c)) != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (sgn(h(r, c)) == 0)
            continue;
        if (sgn(h(r, c)) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h(i, c), h(r, c));
            h.add_row_multiple(i, r, -q);
            u.add_row_multiple(i, r, -q);
        }
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

IntVector SmithForm::nontrivial_invariant_factors() const
{
    IntVector out;
    for (const auto& x : invariant_factors())
        if (x != 1)
            out.push_back(x);
    return out;
}

SmithForm snf(const IntMatrix& a)
{
    SmithForm out{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()), 0};
    IntMatrix& d = out.d;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;
    const std::size_t n = std::min(d.rows(), d.cols());

    auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
        d.swap_rows(t, i);
        u.swap_rows(t, i);
        d.swap_cols(t, j);
        v.swap_cols(t, j);
    };

    std::size_t t = 0;
    for (; t < n; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j)
                if (sgn(d(i, j)) != 0 && (!best || cmpabs(d(i, j), d(best->first, best->second)) < 0))
                    best = {i, j};
        if (!best)
            break;
        move_to_pivot(t, best->first, best->second);

        for (;;) {
            bool cleared = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (sgn(d(i, t)) == 0)
                    continue;
                Integer q = tquot(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (sgn(d(i, t)) != 0)
                    cleared = false;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (sgn(d(t, j)) == 0)
                    continue;
                Integer q = tquot(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (sgn(d(t, j)) != 0)
                    cleared = false;
            }
            if (!cleared) {
                // A remainder smaller than the pivot survived; promote it.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < d.rows(); ++i)
                    if (sgn(d(i, t)) != 0 && cmpabs(d(i, t), d(bi, bj)) < 0)
                        bi = i, bj = t;
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (sgn(d(t, j)) != 0 && cmpabs(d(t, j), d(bi, bj)) < 0)
                        bi = t, bj = j;
                move_to_pivot(t, bi, bj);
                continue;
            }
            // Row and column are clear; enforce pivot | every trailing entry.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i)
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            d.add_row_multiple(t, *bad_row, 1);
            u.add_row_multiple(t, *bad_row, 1);
        }
        if (sgn(d(t, t)) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    out.rank = t;
    return out;
}

IntVector CokernelMap::nontrivial_factors() const
{
    IntVector out;
    for (const auto& x : factors)
        if (x != 1)
            out.push_back(x);
    return out;
}

CokernelMap cokernel_map(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw DimensionError("cokernel_map needs a square matrix");
    const std::size_t n = a.rows();
    const Integer det = abs(determinant(a));
    if (sgn(det) == 0)
        throw SingularMatrixError();

    // a Z^n contains det Z^n, so entries may be reduced modulo det at any time.
    auto reduce = [&](Integer& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), det.get_mpz_t()); };
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            reduce(d(i, j));
    auto row_op = [&](std::size_t i, std::size_t t, const Integer& q) {
        d.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        for (std::size_t j = 0; j < n; ++j) {
            reduce(d(i, j));
            reduce(u(i, j));
        }
    };
    auto col_op = [&](std::size_t j, std::size_t t, const Integer& q) {
        d.add_col_multiple(j, t, q);
        for (std::size_t i = 0; i < n; ++i)
            reduce(d(i, j));
    };
    auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
        d.swap_rows(t, i);
        u.swap_rows(t, i);
        d.swap_cols(t, j);
    };

    CokernelMap out;
    out.factors.assign(n, det);
    for (std::size_t t = 0; t < n; ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (sgn(d(i, j)) != 0 && (!best || d(i, j) < d(best->first, best->second)))
                    best = {i, j};
        if (!best)
            break; // the trailing block is zero modulo det
        move_to_pivot(t, best->first, best->second);
        for (;;) {
            bool cleared = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (sgn(d(i, t)) != 0) {
                    row_op(i, t, -tquot(d(i, t), d(t, t)));
                    cleared = cleared && sgn(d(i, t)) == 0;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (sgn(d(t, j)) != 0) {
                    col_op(j, t, -tquot(d(t, j), d(t, t)));
                    cleared = cleared && sgn(d(t, j)) == 0;
                }
            if (!cleared) {
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < n; ++i)
                    if (sgn(d(i, t)) != 0 && d(i, t) < d(bi, bj))
                        bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (sgn(d(t, j)) != 0 && d(t, j) < d(bi, bj))
                        bi = t, bj = j;
                move_to_pivot(t, bi, bj);
                continue;
            }
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < n && !bad_row; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            row_op(t, *bad_row, 1);
        }
        out.factors[t] = gcd(d(t, t), det);
    }
    out.u = std::move(u);
    return out;
}

IntMatrix integer_kernel_basis(const IntMatrix& a)
{
    SmithForm s = snf(a);
    IntMatrix k(a.cols(), a.cols() - s.rank);
    for (std::size_t j = s.rank; j < a.cols(); ++j)
        for (std::size_t r = 0; r < a.cols(); ++r)
            k(r, j - s.rank) = s.v(r, j);
    return k;
}

IntMatrix gram(const IntMatrix& b) { return b.transpose() * b; }

IntMatrix gram(std::span<const IntVector> vectors)
{
    if (vectors.empty())
        return IntMatrix(0, 0);
    return gram(IntMatrix::from_columns(vectors, vectors.front().size()));
}

Integer determinant(const IntMatrix& a)
{
    if (!a.is_square())
        throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer x = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return hnf(a).rank; }

std::optional<RationalMatrix> try_rational_inverse(const IntMatrix& a)
{
    if (!a.is_square())
        throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    RationalMatrix m(a);
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const Rational pivot = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RationalMatrix rational_inverse(const IntMatrix& a)
{
    auto inv = try_rational_inverse(a);
    if (!inv)
        throw SingularMatrixError();
    return *inv;
}

std::optional<RationalVector> solve_rational(const IntMatrix& a, std::span<const Integer> b)
{
    if (b.size() != a.rows())
        throw DimensionError("right-hand side length does not match matrix rows");
    const std::size_t rows = a.rows(), cols = a.cols();
    RationalMatrix m(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = a(r, c);
        m(r, cols) = b[r];
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m(p, c)) == 0)
            ++p;
        if (p == rows)
            continue;
        for (std::size_t j = 0; j <= cols; ++j)
            std::swap(m(p, j), m(r, j));
        const Rational pivot = m(r, c);
        for (std::size_t j = 0; j <= cols; ++j)
            m(r, j) /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = 0; j <= cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (sgn(m(i, cols)) != 0)
            return std::nullopt;
    RationalVector x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = m(i, cols);
    return x;
}

bool same_lattice(const IntMatrix& b1, const IntMatrix& b2)
{
    if (b1.rows() != b2.rows())
        throw DimensionError("same_lattice: ambient dimensions differ (" + std::to_string(b1.rows()) + " vs " +
                             std::to_string(b2.rows()) + ")");
    HermiteForm h1 = hnf(b1.transpose());
    HermiteForm h2 = hnf(b2.transpose());
    if (h1.rank != h2.rank)
        return false;
    for (std::size_t r = 0; r < h1.rank; ++r)
        for (std::size_t c = 0; c < b1.rows(); ++c)
            if (h1.h(r, c) != h2.h(r, c))
                return false;
    return true;
}

} // namespace cyclefire
