#include "toric/integer_matrix.h"
#include "toric/errors.h"
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toric {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) :
    nrows(rows), ncols(cols), data(rows * cols, Integer(0)) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) :
    nrows(rows.size()), ncols(rows.size() ? rows.begin()->size() : 0)
{
    data.reserve(nrows * ncols);
    for(const auto& r : rows) {
        if(r.size() != ncols)
            throw ShapeError("IntegerMatrix: rows have different lengths");
        for(long long v : r)
            data.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::fromRows(const std::vector<std::vector<Integer>>& rows, std::size_t cols)
{
    std::size_t nc = rows.empty() ? cols : rows[0].size();
    IntegerMatrix m(rows.size(), nc);
    for(std::size_t i = 0; i < rows.size(); i++) {
        if(rows[i].size() != nc)
            throw ShapeError("IntegerMatrix: row " + std::to_string(i) + " has length " +
                std::to_string(rows[i].size()) + ", expected " + std::to_string(nc));
        for(std::size_t j = 0; j < nc; j++)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for(std::size_t i = 0; i < n; i++)
        m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::transpose() const
{
    IntegerMatrix t(ncols, nrows);
    for(std::size_t i = 0; i < nrows; i++)
        for(std::size_t j = 0; j < ncols; j++)
            t(j, i) = (*this)(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::selectColumns(const std::vector<std::size_t>& idx) const
{
    IntegerMatrix m(nrows, idx.size());
    for(std::size_t c = 0; c < idx.size(); c++) {
        if(idx[c] >= ncols)
            throw ShapeError("IntegerMatrix: column index out of range");
        for(std::size_t i = 0; i < nrows; i++)
            m(i, c) = (*this)(i, idx[c]);
    }
    return m;
}

IntegerMatrix IntegerMatrix::selectRows(const std::vector<std::size_t>& idx) const
{
    IntegerMatrix m(idx.size(), ncols);
    for(std::size_t r = 0; r < idx.size(); r++) {
        if(idx[r] >= nrows)
            throw ShapeError("IntegerMatrix: row index out of range");
        for(std::size_t j = 0; j < ncols; j++)
            m(r, j) = (*this)(idx[r], j);
    }
    return m;
}

std::vector<Integer> IntegerMatrix::row(std::size_t i) const
{
    return std::vector<Integer>(data.begin() + i * ncols, data.begin() + (i + 1) * ncols);
}

std::vector<Integer> IntegerMatrix::column(std::size_t j) const
{
    std::vector<Integer> c(nrows);
    for(std::size_t i = 0; i < nrows; i++)
        c[i] = (*this)(i, j);
    return c;
}

bool IntegerMatrix::isZero() const
{
    for(const Integer& v : data)
        if(v != 0) return false;
    return true;
}

bool IntegerMatrix::isIdentity() const
{
    if(nrows != ncols) return false;
    for(std::size_t i = 0; i < nrows; i++)
        for(std::size_t j = 0; j < ncols; j++)
            if((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Integer IntegerMatrix::determinant() const
{
    if(nrows != ncols)
        throw ShapeError("determinant: matrix is not square");
    const std::size_t n = nrows;
    if(n == 0) return 1;
    // Bareiss elimination: every intermediate quotient is exact
    std::vector<Integer> m(data);
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };
    Integer prev = 1;
    int sign = 1;
    for(std::size_t k = 0; k + 1 < n; k++) {
        if(at(k, k) == 0) {
            std::size_t p = k + 1;
            while(p < n && at(p, k) == 0) p++;
            if(p == n) return 0;
            for(std::size_t j = 0; j < n; j++)
                std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for(std::size_t i = k + 1; i < n; i++) {
            for(std::size_t j = k + 1; j < n; j++)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

IntegerMatrix IntegerMatrix::inverseUnimodular() const
{
    if(nrows != ncols)
        throw ShapeError("inverseUnimodular: matrix is not square");
    Integer det = determinant();
    if(det != 1 && det != -1)
        throw NonSmoothError("inverseUnimodular: determinant is " + det.str() + ", not +-1");
    const std::size_t n = nrows;
    // Gauss-Jordan over the rationals; the result is integral since det = +-1
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for(std::size_t i = 0; i < n; i++) {
        for(std::size_t j = 0; j < n; j++)
            a[i][j] = Rational((*this)(i, j));
        a[i][n + i] = 1;
    }
    for(std::size_t k = 0; k < n; k++) {
        std::size_t p = k;
        while(a[p][k] == 0) p++;
        std::swap(a[k], a[p]);
        Rational piv = a[k][k];
        for(auto& v : a[k]) v /= piv;
        for(std::size_t i = 0; i < n; i++) {
            if(i == k || a[i][k] == 0) continue;
            Rational f = a[i][k];
            for(std::size_t j = 0; j < 2 * n; j++)
                a[i][j] -= f * a[k][j];
        }
    }
    IntegerMatrix inv(n, n);
    for(std::size_t i = 0; i < n; i++)
        for(std::size_t j = 0; j < n; j++)
            inv(i, j) = boost::multiprecision::numerator(a[i][n + j]);
    return inv;
}

Eigen::MatrixXd IntegerMatrix::toDouble() const
{
    Eigen::MatrixXd m(nrows, ncols);
    for(std::size_t i = 0; i < nrows; i++)
        for(std::size_t j = 0; j < ncols; j++)
            m(i, j) = (*this)(i, j).convert_to<double>();
    return m;
}

std::vector<std::vector<long long>> IntegerMatrix::toNested() const
{
    static const Integer lo(std::numeric_limits<long long>::min()), hi(std::numeric_limits<long long>::max());
    std::vector<std::vector<long long>> out(nrows, std::vector<long long>(ncols));
    for(std::size_t i = 0; i < nrows; i++)
        for(std::size_t j = 0; j < ncols; j++) {
            const Integer& v = (*this)(i, j);
            if(v < lo || v > hi)
                throw std::overflow_error("IntegerMatrix: entry does not fit in 64 bits");
            out[i][j] = v.convert_to<long long>();
        }
    return out;
}

std::string IntegerMatrix::toString() const
{
    std::ostringstream s;
    s << '[';
    for(std::size_t i = 0; i < nrows; i++) {
        s << (i ? ",[" : "[");
        for(std::size_t j = 0; j < ncols; j++)
            s << (j ? "," : "") << (*this)(i, j);
        s << ']';
    }
    s << ']';
    return s.str();
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b)
{
    return a.nrows == b.nrows && a.ncols == b.ncols && a.data == b.data;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if(a.cols() != b.rows())
        throw ShapeError("IntegerMatrix product: " + std::to_string(a.rows()) + "x" +
            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    IntegerMatrix c(a.rows(), b.cols());
    for(std::size_t i = 0; i < a.rows(); i++)
        for(std::size_t k = 0; k < a.cols(); k++) {
            if(a(i, k) == 0) continue;
            for(std::size_t j = 0; j < b.cols(); j++)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if(a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("IntegerMatrix sum: shape mismatch");
    IntegerMatrix c(a);
    for(std::size_t i = 0; i < a.rows(); i++)
        for(std::size_t j = 0; j < a.cols(); j++)
            c(i, j) += b(i, j);
    return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if(a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("IntegerMatrix difference: shape mismatch");
    IntegerMatrix c(a);
    for(std::size_t i = 0; i < a.rows(); i++)
        for(std::size_t j = 0; j < a.cols(); j++)
            c(i, j) -= b(i, j);
    return c;
}

IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom)
{
    if(top.cols() != bottom.cols())
        throw ShapeError("vstack: column counts differ");
    IntegerMatrix m(top.rows() + bottom.rows(), top.cols());
    for(std::size_t i = 0; i < top.rows(); i++)
        for(std::size_t j = 0; j < top.cols(); j++)
            m(i, j) = top(i, j);
    for(std::size_t i = 0; i < bottom.rows(); i++)
        for(std::size_t j = 0; j < top.cols(); j++)
            m(top.rows() + i, j) = bottom(i, j);
    return m;
}

IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right)
{
    if(left.rows() != right.rows())
        throw ShapeError("hstack: row counts differ");
    IntegerMatrix m(left.rows(), left.cols() + right.cols());
    for(std::size_t i = 0; i < left.rows(); i++) {
        for(std::size_t j = 0; j < left.cols(); j++)
            m(i, j) = left(i, j);
        for(std::size_t j = 0; j < right.cols(); j++)
            m(i, left.cols() + j) = right(i, j);
    }
    return m;
}

Integer gcd(const std::vector<Integer>& values)
{
    Integer g = 0;
    for(const Integer& v : values)
        g = boost::multiprecision::gcd(g, abs(v));
    return g;
}

}  // namespace toric
