// Dense exact linear algebra over Q.
//
// Matrices here are small (a few hundred rows at the very most, usually
// single digits): they are scalar matrices of Hom-space differentials and
// expanded module maps.  Plain fraction-free-ish Gaussian elimination on
// cpp_rational is exact and fast enough; no external solver is needed.

#pragma once

#include "twistcat/rational.h"

#include <vector>

namespace twistcat {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;

    static QMatrix identity(int n);

    // C = A*B (dimension mismatch asserts).
    QMatrix operator*(const QMatrix& other) const;
    QMatrix operator+(const QMatrix& other) const;
    QMatrix operator-() const;

    // Stack horizontally [A | B] (equal row counts).
    static QMatrix hstack(const QMatrix& a, const QMatrix& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// Rank by Gaussian elimination with partial pivoting on exact rationals.
int rank(QMatrix m);

// Reduced row echelon form, in place; returns the pivot column indices.
std::vector<int> rref_in_place(QMatrix& m);

// Basis of the right nullspace {x : m x = 0}, one column vector per basis
// element, via back-substitution from the rref.
std::vector<std::vector<Rat>> nullspace_basis(const QMatrix& m);

// True iff the square matrix is invertible (rank == n).
bool is_invertible(const QMatrix& m);

// Reference rank via fraction-free Bareiss elimination over the integers
// (after clearing denominators row by row).  Algorithmically independent of
// rank(); used in tests to cross-check the rational elimination.
int rank_reference(const QMatrix& m);

} // namespace twistcat
