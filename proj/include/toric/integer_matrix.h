/** \file    integer_matrix.h
    \brief   Dense matrices with arbitrary-precision integer entries
*/
#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace toric {

/// arbitrary-precision integer scalar
typedef boost::multiprecision::cpp_int Integer;
/// exact rational scalar
typedef boost::multiprecision::cpp_rational Rational;

/** Row-major matrix of exact integers.
    The shape is fixed at construction; entries can be modified in place.
*/
class IntegerMatrix {
public:
    /// empty 0x0 matrix
    IntegerMatrix() : nrows(0), ncols(0) {}

    /// zero matrix of the given shape
    IntegerMatrix(std::size_t rows, std::size_t cols);

    /// matrix from a nested list of rows; throws ShapeError if rows differ in length
    IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    /// matrix from a vector of rows; `cols` is used when there are no rows
    static IntegerMatrix fromRows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

    /// n x n identity
    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return nrows; }
    std::size_t cols() const { return ncols; }
    bool empty() const { return nrows == 0 || ncols == 0; }

    const Integer& operator()(std::size_t i, std::size_t j) const { return data[i * ncols + j]; }
    Integer& operator()(std::size_t i, std::size_t j) { return data[i * ncols + j]; }

    IntegerMatrix transpose() const;

    /// matrix formed by the listed columns, in the given order
    IntegerMatrix selectColumns(const std::vector<std::size_t>& idx) const;

    /// matrix formed by the listed rows, in the given order
    IntegerMatrix selectRows(const std::vector<std::size_t>& idx) const;

    std::vector<Integer> row(std::size_t i) const;
    std::vector<Integer> column(std::size_t j) const;

    bool isZero() const;
    bool isIdentity() const;

    /// exact determinant of a square matrix (fraction-free elimination)
    Integer determinant() const;

    /// exact inverse of a square matrix with determinant +-1; throws NonSmoothError otherwise
    IntegerMatrix inverseUnimodular() const;

    /// conversion to floating point
    Eigen::MatrixXd toDouble() const;

    /// entries converted to long long; throws std::overflow_error if any does not fit
    std::vector<std::vector<long long>> toNested() const;

    std::string toString() const;

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator!=(const IntegerMatrix& a, const IntegerMatrix& b) { return !(a == b); }

private:
    std::size_t nrows, ncols;
    std::vector<Integer> data;
};

/// matrix product; throws ShapeError on mismatch
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);

/// stack matrices vertically (equal column counts)
IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom);

/// place matrices side by side (equal row counts)
IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right);

/// greatest common divisor of a list of integers (0 for an all-zero list)
Integer gcd(const std::vector<Integer>& values);

}  // namespace toric
