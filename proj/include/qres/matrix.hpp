#pragma once

// Dense matrices over an exact field: elimination, solving, kernels and
// characteristic polynomials.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/poly.hpp"
#include "qres/scalar.hpp"

namespace qres {

template <Scalar F>
class Matrix {
public:
    using field_type = field_of<F>;

    Matrix() = default;
    Matrix(field_type fld, std::size_t rows, std::size_t cols)
        : fld_(fld), rows_(rows), cols_(cols), a_(rows * cols, fld.zero())
    {
    }

    static Matrix identity(field_type fld, std::size_t n)
    {
        Matrix m(fld, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = fld.one();
        return m;
    }

    /// Matrix whose j-th column is cols[j].
    static Matrix from_columns(field_type fld, std::size_t rows, const std::vector<std::vector<F>>& cols)
    {
        Matrix m(fld, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    const field_type& field() const { return fld_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<F> column(std::size_t j) const
    {
        std::vector<F> v;
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    Matrix transpose() const
    {
        Matrix t(fld_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
        Matrix c(a.fld_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    std::vector<F> apply(const std::vector<F>& v) const
    {
        if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
        std::vector<F> out(rows_, fld_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref_in_place()
    {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, c).is_zero()) ++piv;
            if (piv == rows_) continue;
            swap_rows(r, piv);
            const F inv = (*this)(r, c).inv();
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c).is_zero()) continue;
                const F t = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= t * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        Matrix m = *this;
        return m.rref_in_place().size();
    }

    F det() const
    {
        if (rows_ != cols_) throw PreconditionError("determinant of a non-square matrix");
        Matrix m = *this;
        F d = fld_.one();
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t piv = c;
            while (piv < rows_ && m(piv, c).is_zero()) ++piv;
            if (piv == rows_) return fld_.zero();
            if (piv != c) {
                m.swap_rows(piv, c);
                d = -d;
            }
            d *= m(c, c);
            const F inv = m(c, c).inv();
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m(i, c).is_zero()) continue;
                const F t = m(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= t * m(c, j);
            }
        }
        return d;
    }

    std::optional<Matrix> inverse() const
    {
        if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
        Matrix aug(fld_, rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = fld_.one();
        }
        auto piv = aug.rref_in_place();
        if (piv.size() < rows_ || piv.back() >= cols_) return std::nullopt;
        Matrix inv(fld_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    /// Basis of the right kernel {v : M v = 0}.
    std::vector<std::vector<F>> kernel() const
    {
        Matrix m = *this;
        auto piv = m.rref_in_place();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::vector<F>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_piv[free]) continue;
            std::vector<F> v(cols_, fld_.zero());
            v[free] = fld_.one();
            for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Characteristic polynomial det(xI - M) via Hessenberg reduction.
    Poly<F> charpoly() const
    {
        if (rows_ != cols_) throw PreconditionError("characteristic polynomial of a non-square matrix");
        const std::size_t n = rows_;
        Matrix h = *this;
        // reduce to upper Hessenberg form by similarity
        for (std::size_t m = 1; m + 1 < n; ++m) {
            std::size_t i = m;
            while (i < n && h(i, m - 1).is_zero()) ++i;
            if (i == n) continue;
            if (i != m) {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            const F inv = h(m, m - 1).inv();
            for (std::size_t r = m + 1; r < n; ++r) {
                if (h(r, m - 1).is_zero()) continue;
                const F u = h(r, m - 1) * inv;
                for (std::size_t j = 0; j < n; ++j) h(r, j) -= u * h(m, j);
                for (std::size_t j = 0; j < n; ++j) h(j, m) += u * h(j, r);
            }
        }
        // recurrence on leading principal blocks
        std::vector<Poly<F>> p;
        p.push_back(Poly<F>::constant(fld_.one()));
        const Poly<F> x = Poly<F>::x(fld_);
        for (std::size_t m = 1; m <= n; ++m) {
            Poly<F> pm = (x - Poly<F>::constant(h(m - 1, m - 1))) * p[m - 1];
            F t = fld_.one();
            for (std::size_t i = 1; i < m; ++i) {
                t *= h(m - i, m - i - 1);
                pm -= Poly<F>::constant(t * h(m - i - 1, m - 1)) * p[m - i - 1];
            }
            p.push_back(std::move(pm));
        }
        return p[n];
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

private:
    field_type fld_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

/// Outcome of A x = b: a particular solution when consistent, plus a basis
/// of the homogeneous solutions. Inconsistency is a value, not an exception.
template <Scalar F>
struct LinearSolution {
    std::optional<std::vector<F>> particular;
    std::vector<std::vector<F>> kernel;

    bool consistent() const { return particular.has_value(); }
    bool unique() const { return consistent() && kernel.empty(); }
};

template <Scalar F>
LinearSolution<F> solve_linear(const Matrix<F>& a, const std::vector<F>& b)
{
    if (b.size() != a.rows()) throw PreconditionError("solve_linear: right-hand side length mismatch");
    const auto fld = a.field();
    Matrix<F> aug(fld, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = aug.rref_in_place();
    LinearSolution<F> out;
    out.kernel = a.kernel();
    if (!piv.empty() && piv.back() == a.cols()) return out;
    std::vector<F> x(a.cols(), fld.zero());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
    out.particular = std::move(x);
    return out;
}

/// Precomputed exact solver for repeated systems A x = b with A of full
/// column rank, where b is known to lie in the column space.
template <Scalar F>
class ColumnSpaceSolver {
public:
    ColumnSpaceSolver() = default;
    explicit ColumnSpaceSolver(Matrix<F> a) : a_(std::move(a))
    {
        Matrix<F> t = a_.transpose();
        auto piv = t.rref_in_place();  // pivot columns of A^T = independent rows of A
        if (piv.size() != a_.cols()) throw InvariantViolation("ColumnSpaceSolver: matrix lacks full column rank");
        rows_ = piv;
        Matrix<F> sq(a_.field(), a_.cols(), a_.cols());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j) sq(i, j) = a_(rows_[i], j);
        auto inv = sq.inverse();
        if (!inv) throw InvariantViolation("ColumnSpaceSolver: singular pivot block");
        inv_ = std::move(*inv);
    }

    /// Solution of A x = b, or nullopt when b is outside the column space.
    std::optional<std::vector<F>> solve(const std::vector<F>& b) const
    {
        std::vector<F> sub;
        for (auto r : rows_) sub.push_back(b[r]);
        std::vector<F> x = inv_.apply(sub);
        if (a_.apply(x) != b) return std::nullopt;
        return x;
    }

    const Matrix<F>& matrix() const { return a_; }

private:
    Matrix<F> a_;
    Matrix<F> inv_;
    std::vector<std::size_t> rows_;
};

template <Scalar F>
Poly<F> charpoly(const Matrix<F>& m)
{
    return m.charpoly();
}

}  // namespace qres
