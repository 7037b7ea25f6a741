#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gerbecalc/rational.hpp"

namespace gerbecalc {

/// Dense row-major matrix over an exact scalar type (Int or Rat).
template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

    T& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = at(i, j);
        return v;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

using QMat = Mat<Rat>;
using ZMat = Mat<Int>;

template <class T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> r(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& v) {
    std::vector<T> r(a.rows, T(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

inline QMat to_qmat(const ZMat& a) {
    QMat r(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = Rat(a.data[i]);
    return r;
}

/// Exact determinant via Gaussian elimination.
Rat det(QMat a);

long rank(QMat a);

/// One solution of A x = b, or nullopt if the system is inconsistent.
std::optional<QVec> solve(const QMat& a, const QVec& b);

/// Solves A X = B columnwise; nullopt if any column is inconsistent.
std::optional<QMat> solve_matrix(const QMat& a, const QMat& b);

/// Inverse of a square nonsingular matrix; throws std::logic_error otherwise.
QMat inverse(const QMat& a);

/// Basis of the right kernel {x : A x = 0} as matrix columns (cols = nullity).
QMat nullspace(const QMat& a);

/// Row-style Hermite normal form: canonical echelon basis of the row lattice.
/// Pivots are positive, entries above each pivot lie in [0, pivot), zero rows
/// are dropped. Invariant under left multiplication by unimodular matrices.
ZMat row_hermite(const ZMat& a);

/// Column-style Hermite normal form of the column lattice (transposed flavour).
inline ZMat column_hermite(const ZMat& a) { return transpose(row_hermite(transpose(a))); }

struct SmithResult {
    ZMat u, d, v;          // u * a * v = d with u, v unimodular
    std::vector<Int> diag; // nonzero diagonal of d: d1 | d2 | ... , all positive
    std::size_t rank = 0;
};

SmithResult smith_normal_form(const ZMat& a);

/// One integer solution of A x = b, or nullopt if none exists.
std::optional<ZVec> solve_integer(const ZMat& a, const ZVec& b);

/// Basis of the integer right kernel as matrix columns.
ZMat integer_kernel(const ZMat& a);

/// Clears denominators of each row independently (row lattice of constraints).
ZMat scale_rows_integral(const QMat& a);

}  // namespace gerbecalc
