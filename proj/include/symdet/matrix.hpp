#pragma once

#include <vector>

#include "symdet/poly.hpp"

namespace symdet {

// Rectangular matrix of polynomials sharing one ring.
class PolyMatrix {
public:
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    Poly& at(std::size_t i, std::size_t j);
    const Poly& at(std::size_t i, std::size_t j) const;

    bool is_symmetric() const;
    PolyMatrix transpose() const;
    PolyMatrix submatrix_deleting(std::size_t row, std::size_t col) const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

    // Evaluate every entry at a rational point.
    std::vector<std::vector<Rational>> evaluate(const std::vector<Rational>& point) const;

private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<Poly> entries_;
};

// Exact determinant, two independent routes. Both throw NotSquareMatrix.
Poly det_laplace(const PolyMatrix& m);
Poly det_bareiss(const PolyMatrix& m);
inline Poly det(const PolyMatrix& m) { return det_bareiss(m); }

// (-1)^(i+j) * det of the minor deleting row i, column j. Zero-based indices.
Poly cofactor(const PolyMatrix& m, std::size_t i, std::size_t j);
PolyMatrix adjugate(const PolyMatrix& m);

// Rank of a scalar rational matrix by Gaussian elimination.
std::size_t rational_rank(std::vector<std::vector<Rational>> m);

// Dense matrix over the rationals: just enough exact linear algebra for the
// resultant-matrix bookkeeping.
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols);
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

    Rational det() const;
    QMatrix inverse() const;  // throws Error when singular
    QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    QMatrix permute_columns(const std::vector<std::size_t>& new_from_old) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

}  // namespace symdet
