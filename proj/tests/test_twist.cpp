#include "twistcat/twist.h"

#include <doctest.h>

#include <array>
#include <stdexcept>

using namespace twistcat;

namespace {

const std::vector<std::array<int, 3>> kPresets = {
    {2, 1, 1}, {3, 1, 2}, {4, 1, 3}, {3, 0, 2}, {4, 2, 1}, {2, 2, 2}, {1, 0, 1},
};

// T_E(E_i) should be E_{i-1} shifted by 1 - k_{i-1}, indices cyclic.
void check_cycle_twist_action(const ExceptionalCycle& E) {
    for (int i = 1; i <= E.length(); ++i) {
        const int prev = i == 1 ? E.length() : i - 1;
        const ProjComplex got = twist(E, E.object(i));
        const ProjComplex want = shift(E.object(prev), 1 - E.k_of(prev));
        INFO(E.name, "_", i, " -> expected shift ", 1 - E.k_of(prev), " of ", E.name, "_", prev);
        CHECK(is_isomorphic(got, want));
    }
}

} // namespace

TEST_SUITE("twist") {

TEST_CASE("X cycle structure on Lambda(3,1,2)") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle X = build_X(A);
    CHECK(X.length() == A.q() + A.r()); // 3
    CHECK(X.k == std::vector<int>{1, 1, -1});
    // X_1 = Sigma P_2, X_2 = P_0/P_-1, X_3 = P_-1.
    CHECK(is_isomorphic(X.object(1), shift(projective_stalk(A, 2), 1)));
    CHECK(is_isomorphic(X.object(2), quotient_resolution(A, 0)));
    CHECK(is_isomorphic(X.object(3), projective_stalk(A, -1)));
}

TEST_CASE("X cycle structure on Lambda(4,2,1)") {
    const Algebra A(4, 2, 1);
    const ExceptionalCycle X = build_X(A);
    CHECK(X.length() == 3);
    CHECK(X.k == std::vector<int>{1, 1, 0});
    CHECK(is_isomorphic(X.object(1), quotient_resolution(A, 0)));
    CHECK(is_isomorphic(X.object(2), quotient_resolution(A, -1)));
    CHECK(is_isomorphic(X.object(3), projective_stalk(A, -2)));
}

TEST_CASE("X cycle degenerates to the regular module on Lambda(1,0,1)") {
    const Algebra A(1, 0, 1);
    const ExceptionalCycle X = build_X(A);
    CHECK(X.length() == 1);
    CHECK(X.k == std::vector<int>{0});
    CHECK(is_isomorphic(X.object(1), projective_stalk(A, 0)));
}

TEST_CASE("Y cycle structure") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle Y = build_Y(A);
    CHECK(Y.length() == A.p() - A.r()); // 1
    CHECK(Y.k == std::vector<int>{3});  // r + 1
    CHECK(is_isomorphic(Y.object(1), simple_resolution(A, 1)));

    const Algebra B(4, 2, 1);
    const ExceptionalCycle YB = build_Y(B);
    CHECK(YB.length() == 3);
    CHECK(YB.k == std::vector<int>{1, 1, 2});
    CHECK(is_isomorphic(YB.object(1), simple_resolution(B, 3)));
    CHECK(is_isomorphic(YB.object(2), simple_resolution(B, 2)));
    CHECK(is_isomorphic(YB.object(3), simple_resolution(B, 1)));

    CHECK_THROWS_AS(build_Y(Algebra(2, 2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(build_Y(Algebra(1, 0, 1)), std::invalid_argument);
}

TEST_CASE("both cycles verify as exceptional on every preset") {
    for (const auto& [p, q, r] : kPresets) {
        const Algebra A(p, q, r);
        INFO("Lambda(", p, ",", q, ",", r, ")");
        CHECK(verify_exceptional(build_X(A)).empty());
        if (r < p) CHECK(verify_exceptional(build_Y(A)).empty());
    }
}

TEST_CASE("a corrupted cycle fails verification") {
    const Algebra A(3, 1, 2);
    ExceptionalCycle X = build_X(A);
    X.k[0] = 2; // wrong degree vector
    CHECK_FALSE(verify_exceptional(X).empty());

    ExceptionalCycle X2 = build_X(A);
    X2.objects[0] = shift(X2.objects[0], 1); // wrong shift on one object
    CHECK_FALSE(verify_exceptional(X2).empty());

    ExceptionalCycle X3 = build_X(A);
    X3.objects[2] = projective_stalk(A, 0); // not Hom-orthogonal any more
    CHECK_FALSE(verify_exceptional(X3).empty());
}

TEST_CASE("graded endomorphisms of the length-one Y cycle") {
    // For Lambda(3,1,2) the lone Y object is the simple S_1, whose graded
    // self-Homs are K in degree 0 and K in degree r+1 = 3.
    const Algebra A(3, 1, 2);
    const ProjComplex s1 = simple_resolution(A, 1);
    CHECK(hom_dims_all(s1, s1) == DegreeVector{{0, 1}, {3, 1}});
}

TEST_CASE("twisting a cycle object steps backwards through the cycle") {
    for (const auto& [p, q, r] : std::vector<std::array<int, 3>>{{2, 1, 1}, {3, 1, 2}, {1, 0, 1}, {4, 2, 1}}) {
        const Algebra A(p, q, r);
        INFO("Lambda(", p, ",", q, ",", r, ")");
        check_cycle_twist_action(build_X(A));
        if (r < p) check_cycle_twist_action(build_Y(A));
    }
}

TEST_CASE("twist functor values on projectives") {
    // Frozen functor values on Lambda(4,2,1): T_Y shifts the first p-r-1
    // projectives up the cycle and fixes projectives outside the window.
    const Algebra A(4, 2, 1);
    const ExceptionalCycle Y = build_Y(A);
    CHECK(is_isomorphic(twist(Y, projective_stalk(A, 1)), projective_stalk(A, 2)));
    CHECK(is_isomorphic(twist(Y, projective_stalk(A, 2)), projective_stalk(A, 3)));
    CHECK(is_isomorphic(twist(Y, projective_stalk(A, 0)), projective_stalk(A, 0)));
    CHECK(is_isomorphic(twist(Y, projective_stalk(A, -1)), projective_stalk(A, -1)));
    CHECK(is_isomorphic(twist(Y, projective_stalk(A, -2)), projective_stalk(A, -2)));
}

TEST_CASE("evaluation sums on projectives") {
    const Algebra A(3, 1, 2);
    // Mapping out of the Y cycle: the first projective in the window maps to
    // a single shifted simple.
    const ExceptionalCycle Y = build_Y(A);
    const ProjComplex p1 = projective_stalk(A, 1);
    const BigF fy = big_F(Y, p1);
    CHECK(is_isomorphic(fy.total, shift(simple_resolution(A, 1), -(A.r() + 1))));
    // Mapping out of the X cycle: projectives in the cycle window see only
    // the final stalk P_{-q}.
    const ExceptionalCycle X = build_X(A);
    const BigF fx = big_F(X, p1);
    CHECK(is_isomorphic(fx.total, projective_stalk(A, -1)));
}

TEST_CASE("orthogonal objects are fixed through the empty-evaluation path") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle Y = build_Y(A);
    const ProjComplex pm1 = projective_stalk(A, -1);
    // No component of the S_1 resolution lands on vertex -1, so the whole
    // Hom complex is empty and both twists act as the identity.
    CHECK(hom_dims_all(Y.object(1), pm1).empty());
    CHECK(is_isomorphic(twist(Y, pm1), pm1));
    CHECK(is_isomorphic(inverse_twist(Y, pm1), pm1));
}

TEST_CASE("the orbit of the last X object follows the published pattern") {
    // On Lambda(3,1,2): T_X(P_-1) = P_0/P_-1, T_X^2(P_-1) = Sigma P_2,
    // T_X^3(P_-1) = Sigma^2 P_-1, then the pattern repeats with an extra
    // Sigma^2 every 3 steps.
    const Algebra A(3, 1, 2);
    const ExceptionalCycle X = build_X(A);
    ProjComplex cur = projective_stalk(A, -1);
    cur = twist(X, cur);
    CHECK(is_isomorphic(cur, quotient_resolution(A, 0)));
    cur = twist(X, cur);
    CHECK(is_isomorphic(cur, shift(projective_stalk(A, 2), 1)));
    cur = twist(X, cur);
    CHECK(is_isomorphic(cur, shift(projective_stalk(A, -1), 2)));
    for (int i = 0; i < 3; ++i) cur = twist(X, cur);
    CHECK(is_isomorphic(cur, shift(projective_stalk(A, -1), 4)));
}

TEST_CASE("twist and inverse twist are mutually inverse") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle X = build_X(A);
    const ExceptionalCycle Y = build_Y(A);
    std::vector<ProjComplex> probes = {
        algebra_stalk(A),
        simple_resolution(A, 1),
        quotient_resolution(A, 0),
        shift(projective_stalk(A, 0), 2),
    };
    for (const ProjComplex& c : probes) {
        const ProjComplex cm = minimize(c);
        for (const ExceptionalCycle* E : {&X, &Y}) {
            CHECK(is_isomorphic(inverse_twist(*E, twist(*E, c)), cm));
            CHECK(is_isomorphic(twist(*E, inverse_twist(*E, c)), cm));
        }
    }
}

TEST_CASE("twists preserve graded Hom dimensions") {
    for (const auto& [p, q, r] : std::vector<std::array<int, 3>>{{3, 1, 2}, {2, 2, 2}}) {
        const Algebra A(p, q, r);
        const ExceptionalCycle X = build_X(A);
        std::vector<ProjComplex> probes = {
            algebra_stalk(A),
            projective_stalk(A, 0),
            shift(projective_stalk(A, A.max_vertex()), 1),
        };
        if (A.q() >= 1) probes.push_back(quotient_resolution(A, 0));
        for (const ProjComplex& a : probes)
            for (const ProjComplex& b : probes) {
                const DegreeVector before = hom_dims_all(a, b);
                const DegreeVector after = hom_dims_all(twist(X, a), twist(X, b));
                CHECK(before == after);
            }
    }
}

TEST_CASE("global twist relation on the regular module") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle X = build_X(A);
    const ExceptionalCycle Y = build_Y(A);
    ProjComplex lhs = algebra_stalk(A);
    for (int i = 0; i < A.r() + A.q(); ++i) lhs = twist(X, lhs);
    ProjComplex rhs = algebra_stalk(A);
    for (int i = 0; i < A.p() - A.r(); ++i) rhs = twist(Y, rhs);
    CHECK(is_isomorphic(lhs, shift(rhs, A.r())));
}

TEST_CASE("word parsing") {
    const Algebra A(3, 1, 2);
    std::string err;

    auto w = parse_word("X^2 Y^-1 S^1", A, &err);
    REQUIRE(w.has_value());
    CHECK(w->steps.size() == 3);
    CHECK(w->net_x == 2);
    CHECK(w->net_y == -1);
    CHECK(w->net_s == 1);
    CHECK(w->canonical() == "X^2 Y^-1 S^1");

    auto lower = parse_word("x y^-2 s", A, &err);
    REQUIRE(lower.has_value());
    CHECK(lower->canonical() == "X^1 Y^-2 S^1");

    CHECK_FALSE(parse_word("", A, &err).has_value());
    CHECK_FALSE(parse_word("Z^1", A, &err).has_value());
    CHECK_FALSE(parse_word("X^", A, &err).has_value());
    CHECK_FALSE(parse_word("X^1.5", A, &err).has_value());
    CHECK_FALSE(parse_word("X2", A, &err).has_value());

    // Zero exponents collapse away but leave a valid word.
    auto z = parse_word("X^0 S^2", A, &err);
    REQUIRE(z.has_value());
    CHECK(z->steps.size() == 1);
    CHECK(z->net_s == 2);

    // Y is rejected when the Y cycle does not exist (r = p).
    const Algebra B(2, 2, 2);
    CHECK_FALSE(parse_word("Y^1", B, &err).has_value());
    CHECK(parse_word("X^3", B, &err).has_value());
}

TEST_CASE("applying words") {
    const Algebra A(3, 1, 2);
    const ExceptionalCycle X = build_X(A);
    const ExceptionalCycle Y = build_Y(A);
    const ProjComplex lam = algebra_stalk(A);
    std::string err;

    const auto s2 = parse_word("S^2", A, &err);
    REQUIRE(s2.has_value());
    CHECK(to_json(apply_word(*s2, X, &Y, lam)) == to_json(shift(lam, 2)));

    const auto round = parse_word("X^1 X^-1", A, &err);
    REQUIRE(round.has_value());
    CHECK(is_isomorphic(apply_word(*round, X, &Y, lam), lam));

    const auto needs_y = parse_word("Y^1", A, &err);
    REQUIRE(needs_y.has_value());
    CHECK_THROWS_AS(apply_word(*needs_y, X, nullptr, lam), std::invalid_argument);
}

} // TEST_SUITE
