#include "cyclefire/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "cyclefire/errors.hpp"

namespace cyclefire {

IntVector make_vector(std::initializer_list<long> values)
{
    IntVector v;
    v.reserve(values.size());
    for (long x : values)
        v.emplace_back(x);
    return v;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b)
{
    if (a.size() != b.size())
        throw DimensionError("dot product of vectors with lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

Integer squared_norm(std::span<const Integer> a) { return dot(a, a); }

Integer floor_div(const Integer& num, const Integer& den)
{
    assert(sgn(den) != 0);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

bool is_zero(std::span<const Integer> v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw DimensionError("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t width)
{
    IntMatrix m(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw DimensionError("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                                 ", expected " + std::to_string(width));
        for (std::size_t c = 0; c < width; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns, std::size_t height)
{
    IntMatrix m(height, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != height)
            throw DimensionError("column " + std::to_string(c) + " has length " +
                                 std::to_string(columns[c].size()) + ", expected " + std::to_string(height));
        for (std::size_t r = 0; r < height; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

std::vector<IntVector> IntMatrix::columns() const
{
    std::vector<IntVector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        out.push_back(column(c));
    return out;
}

IntVector IntMatrix::diagonal() const
{
    IntVector d;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        d.push_back((*this)(i, i));
    return d;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k)
{
    if (sgn(k) == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        if (sgn((*this)(src, c)) != 0)
            (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k)
{
    if (sgn(k) == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        if (sgn((*this)(r, src)) != 0)
            (*this)(r, dst) += k * (*this)(r, src);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("matrix product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    IntMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(k, j)) != 0)
                    p(i, j) += aik * b(k, j);
        }
    return p;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> v)
{
    if (a.cols() != v.size())
        throw DimensionError("matrix-vector product with mismatched lengths");
    IntVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0)
                out[i] += a(i, k) * v[k];
    return out;
}

IntVector operator-(std::span<const Integer> a, std::span<const Integer> b)
{
    if (a.size() != b.size())
        throw DimensionError("vector difference with mismatched lengths");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(const IntMatrix& m) : RationalMatrix(m.rows(), m.cols())
{
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(r, c) = Rational(m(r, c));
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("rational matrix product with mismatched shapes");
    RationalMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                p(i, j) += a(i, k) * b(k, j);
        }
    return p;
}

RationalVector operator*(const RationalMatrix& a, std::span<const Integer> v)
{
    if (a.cols() != v.size())
        throw DimensionError("matrix-vector product with mismatched lengths");
    RationalVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (sgn(v[k]) != 0)
                out[i] += a(i, k) * v[k];
    return out;
}

std::string to_string(std::span<const Integer> v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

} // namespace cyclefire
