#include "twistcat/qmatrix.h"

#include <doctest.h>

#include <random>

using namespace twistcat;

namespace {

QMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = Rat(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return m;
}

} // namespace

TEST_SUITE("qmatrix") {

TEST_CASE("rank of basic matrices") {
    CHECK(rank(QMatrix::identity(4)) == 4);
    CHECK(rank(QMatrix(3, 5)) == 0);
    CHECK(rank(from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
    CHECK(rank(from_rows({{0, 1}, {1, 0}})) == 2);
    CHECK(rank(QMatrix(0, 0)) == 0);
}

TEST_CASE("rational entries are handled exactly") {
    QMatrix m(2, 2);
    m.at(0, 0) = Rat(1, 3);
    m.at(0, 1) = Rat(1, 6);
    m.at(1, 0) = Rat(2, 3);
    m.at(1, 1) = Rat(1, 3); // second row = 2 * first row
    CHECK(rank(m) == 1);
    m.at(1, 1) = Rat(1, 2);
    CHECK(rank(m) == 2);
    CHECK(is_invertible(m));
}

TEST_CASE("rref returns pivot columns and reduces fully") {
    QMatrix m = from_rows({{1, 2, 0, 3}, {2, 4, 1, 7}, {0, 0, 2, 2}});
    const auto pivots = rref_in_place(m);
    CHECK(pivots == std::vector<int>{0, 2});
    // Pivot rows are unit vectors in the pivot columns.
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
        for (int i = 0; i < m.rows(); ++i)
            CHECK(m.at(i, pivots[pi]) == (i == static_cast<int>(pi) ? Rat(1) : Rat(0)));
    }
}

TEST_CASE("nullspace vectors are exact kernel elements") {
    const QMatrix m = from_rows({{1, 2, 3}, {4, 5, 6}});
    const auto ns = nullspace_basis(m);
    CHECK(static_cast<int>(ns.size()) == 3 - rank(m));
    for (const auto& v : ns) {
        REQUIRE(v.size() == 3);
        for (int i = 0; i < m.rows(); ++i) {
            Rat s = 0;
            for (int j = 0; j < 3; ++j) s += m.at(i, j) * v[static_cast<size_t>(j)];
            CHECK(s == Rat(0));
        }
    }
}

TEST_CASE("invertibility detection") {
    CHECK(is_invertible(QMatrix::identity(3)));
    CHECK_FALSE(is_invertible(from_rows({{1, 2}, {2, 4}})));
    CHECK_FALSE(is_invertible(QMatrix(2, 2)));
}

TEST_CASE("product and hstack shapes") {
    const QMatrix a = from_rows({{1, 0, 2}, {0, 1, 1}});
    const QMatrix b = from_rows({{1, 1}, {2, 0}, {0, 3}});
    const QMatrix ab = a * b;
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 2);
    CHECK(ab.at(0, 0) == Rat(1));
    CHECK(ab.at(0, 1) == Rat(7));
    CHECK(ab.at(1, 0) == Rat(2));
    CHECK(ab.at(1, 1) == Rat(3));

    const QMatrix s = QMatrix::hstack(a, a);
    CHECK(s.rows() == 2);
    CHECK(s.cols() == 6);
    CHECK(s.at(1, 5) == Rat(1));
}

TEST_CASE("randomized rank agrees with the integer Bareiss reference") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 7);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = dim(rng), c = dim(rng);
        QMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Rat(num(rng), den(rng));
        CHECK(rank(m) == rank_reference(m));
    }
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const int r = dim(rng), c = dim(rng);
        QMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Rat(num(rng));
        CHECK(rank(m) + static_cast<int>(nullspace_basis(m).size()) == c);
    }
}

} // TEST_SUITE
