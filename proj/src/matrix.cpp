#include "symdet/matrix.hpp"

#include "symdet/errors.hpp"

namespace symdet {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring_)) {}

Poly& PolyMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
    return entries_[i * cols_ + j];
}

const Poly& PolyMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
    return entries_[i * cols_ + j];
}

bool PolyMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

PolyMatrix PolyMatrix::submatrix_deleting(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw IndexOutOfRange("minor index out of range");
    PolyMatrix s(ring_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, si = 0; i < rows_; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, sj = 0; j < cols_; ++j) {
            if (j == col) continue;
            s.at(si, sj) = at(i, j);
            ++sj;
        }
        ++si;
    }
    return s;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    PolyMatrix r(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            Poly acc(a.ring_);
            for (std::size_t k = 0; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        if (a.entries_[i] != b.entries_[i]) return false;
    return true;
}

std::vector<std::vector<Rational>> PolyMatrix::evaluate(const std::vector<Rational>& point) const {
    std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j).evaluate(point);
    return out;
}

Poly det_laplace(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquareMatrix("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Poly::constant(m.ring(), Rational(1));
    if (n == 1) return m.at(0, 0);
    Poly acc(m.ring());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Poly sub = det_laplace(m.submatrix_deleting(0, j));
        Poly term = m.at(0, j) * sub;
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

Poly det_bareiss(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquareMatrix("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Poly::constant(m.ring(), Rational(1));
    PolyMatrix w = m;
    Poly prev = Poly::constant(m.ring(), Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k).is_zero()) {
            std::size_t pivot = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) { pivot = i; break; }
            if (pivot == k) return Poly::zero(m.ring());  // whole column zero
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                auto q = num.divide_exact(prev);
                if (!q) throw Error("bareiss: non-exact division");
                w.at(i, j) = *q;
            }
            w.at(i, k) = Poly::zero(m.ring());
        }
        prev = w.at(k, k);
        if (prev.is_zero()) return Poly::zero(m.ring());
    }
    Poly d = w.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

Poly cofactor(const PolyMatrix& m, std::size_t i, std::size_t j) {
    if (m.rows() != m.cols()) throw NotSquareMatrix("cofactor of non-square matrix");
    if (i >= m.rows() || j >= m.cols()) throw IndexOutOfRange("cofactor index out of range");
    Poly d = det_bareiss(m.submatrix_deleting(i, j));
    return ((i + j) % 2 == 0) ? d : -d;
}

PolyMatrix adjugate(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquareMatrix("adjugate of non-square matrix");
    PolyMatrix adj(m.ring(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) adj.at(j, i) = cofactor(m, i, j);
    return adj;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (!m[i][col].is_zero()) { pivot = i; break; }
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        Rational inv = m[rank][col].inverse();
        for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    QMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            Rational acc(0);
            for (std::size_t k = 0; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

Rational QMatrix::det() const {
    if (rows_ != cols_) throw NotSquareMatrix("determinant of non-square matrix");
    QMatrix w = *this;
    Rational d(1);
    for (std::size_t k = 0; k < rows_; ++k) {
        std::size_t pivot = rows_;
        for (std::size_t i = k; i < rows_; ++i)
            if (!w.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot == rows_) return Rational(0);
        if (pivot != k) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            d = -d;
        }
        d *= w.at(k, k);
        Rational inv = w.at(k, k).inverse();
        for (std::size_t i = k + 1; i < rows_; ++i) {
            Rational f = w.at(i, k) * inv;
            if (f.is_zero()) continue;
            for (std::size_t j = k; j < cols_; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return d;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw NotSquareMatrix("inverse of non-square matrix");
    std::size_t n = rows_;
    QMatrix w = *this;
    QMatrix inv = identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i)
            if (!w.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot == n) throw Error("singular matrix");
        if (pivot != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        Rational s = w.at(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            w.at(k, j) *= s;
            inv.at(k, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w.at(i, k).is_zero()) continue;
            Rational f = w.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    QMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
    return b;
}

QMatrix QMatrix::permute_columns(const std::vector<std::size_t>& new_from_old) const {
    if (new_from_old.size() != cols_) throw Error("column permutation arity mismatch");
    QMatrix r(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, new_from_old[j]);
    return r;
}

}  // namespace symdet
