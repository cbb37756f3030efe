#include "twistcat/qmatrix.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdlib>

namespace twistcat {

bool QMatrix::is_zero() const {
    for (const Rat& x : a_)
        if (x != 0) return false;
    return true;
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
    assert(cols_ == other.rows_);
    QMatrix c(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < other.cols_; ++j) {
                const Rat& y = other.at(k, j);
                if (y != 0) c.at(i, j) += x * y;
            }
        }
    return c;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    QMatrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + other.a_[i];
    return c;
}

QMatrix QMatrix::operator-() const {
    QMatrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = -a_[i];
    return c;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
    assert(a.rows() == b.rows());
    QMatrix c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

std::vector<int> rref_in_place(QMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
        const Rat inv = Rat(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const Rat f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(QMatrix m) {
    // Forward elimination only; no need for the reduced form.
    int rk = 0;
    for (int col = 0; col < m.cols() && rk < m.rows(); ++col) {
        int piv = -1;
        for (int i = rk; i < m.rows(); ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rk)
            for (int j = col; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rk, j));
        const Rat& p = m.at(rk, col);
        for (int i = rk + 1; i < m.rows(); ++i) {
            const Rat f = m.at(i, col) / p;
            if (f == 0) continue;
            m.at(i, col) = 0;
            for (int j = col + 1; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

std::vector<std::vector<Rat>> nullspace_basis(const QMatrix& m) {
    QMatrix red = m;
    const std::vector<int> pivots = rref_in_place(red);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(m.cols(), Rat(0));
        v[free] = 1;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            v[pivots[pr]] = -red.at(static_cast<int>(pr), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_invertible(const QMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

int rank_reference(const QMatrix& m) {
    // Clear denominators per row, then run fraction-free Bareiss
    // elimination over the integers.
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(static_cast<size_t>(R), std::vector<Int>(static_cast<size_t>(C)));
    for (int i = 0; i < R; ++i) {
        Int lcm = 1;
        for (int j = 0; j < C; ++j)
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(m.at(i, j)));
        for (int j = 0; j < C; ++j) {
            const Rat scaled = m.at(i, j) * lcm;
            a[i][j] = boost::multiprecision::numerator(scaled);
        }
    }
    Int prev = 1;
    int rk = 0;
    for (int col = 0; col < C && rk < R; ++col) {
        int piv = -1;
        for (int i = rk; i < R; ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rk) std::swap(a[piv], a[rk]);
        for (int i = rk + 1; i < R; ++i) {
            for (int j = col + 1; j < C; ++j)
                a[i][j] = (a[rk][col] * a[i][j] - a[i][col] * a[rk][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rk][col];
        ++rk;
    }
    return rk;
}

} // namespace twistcat
