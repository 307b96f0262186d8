#ifndef CATFLAT_MATRIX_HPP
#define CATFLAT_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "catflat/errors.hpp"
#include "catflat/field.hpp"

namespace catflat {

/// Dense row-major matrix over one of the exact coefficient fields.
template <class F>
class Matrix {
public:
    using Field = F;
    using Element = typename F::Element;

    Matrix() : field_(), rows_(0), cols_(0) {}

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field().one();
        return m;
    }

    const F& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Element& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Element& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Element* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
    const Element* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!field_.eq(a_[i], o.a_[i])) return false;
        return true;
    }

private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<Element> a_;
};

using QMatrix = Matrix<Rationals>;
using PMatrix = Matrix<PrimeField>;

/// Submatrix of the first k rows and first k columns.
template <class F>
Matrix<F> upper_left_minor(const Matrix<F>& m, std::size_t k) {
    if (k > m.rows() || k > m.cols())
        fail(errc::size_exceeded, "minor size " + std::to_string(k) + " exceeds " +
                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    Matrix<F> out(m.field(), k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
    return out;
}

/// Submatrix picking the given rows and columns, in the given order.
template <class F>
Matrix<F> submatrix(const Matrix<F>& m, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
    Matrix<F> out(m.field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (rows[i] >= m.rows() || cols[j] >= m.cols())
                fail(errc::index_out_of_range, "submatrix index out of range");
            out(i, j) = m(rows[i], cols[j]);
        }
    return out;
}

} // namespace catflat

#endif
