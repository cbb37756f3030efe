#include "twistcat/entropy.h"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace twistcat;

namespace {

FunctorWord must_parse(const Algebra& A, const std::string& text) {
    std::string err;
    const auto w = parse_word(text, A, &err);
    REQUIRE_MESSAGE(w.has_value(), err);
    return *w;
}

} // namespace

TEST_SUITE("entropy") {

TEST_CASE("closed-form entropy values") {
    // Lambda(3,1,2): single X twist grows at rate (2/3) t for t > 0.
    CHECK(*closed_form_entropy(3, 1, 2, 1, 0, 0, 1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(*closed_form_entropy(3, 1, 2, 1, 0, 0, -1.0) == doctest::Approx(0.0));
    CHECK(*closed_form_entropy(3, 1, 2, 1, 0, 0, 0.0) == doctest::Approx(0.0));
    // Single Y twist grows at rate -2t for t < 0.
    CHECK(*closed_form_entropy(3, 1, 2, 0, 1, 0, -1.0) == doctest::Approx(2.0));
    CHECK(*closed_form_entropy(3, 1, 2, 0, 1, 0, 1.0) == doctest::Approx(0.0));
    // Mixed word X Y S.
    CHECK(*closed_form_entropy(3, 1, 2, 1, 1, 1, 1.0) == doctest::Approx(5.0 / 3.0));
    CHECK(*closed_form_entropy(3, 1, 2, 1, 1, 1, -1.0) == doctest::Approx(1.0));
    // r = p: pure X words move at rate k p/(p+q) t.
    CHECK(*closed_form_entropy(2, 2, 2, 1, 0, 0, 1.0) == doctest::Approx(0.5));
    CHECK(*closed_form_entropy(2, 2, 2, 1, 0, 0, -1.0) == doctest::Approx(-0.5));
    CHECK(*closed_form_entropy(2, 2, 2, 3, 0, 2, 1.0) == doctest::Approx(2.0 + 1.5));
    // r = p with Y twists is outside the closed-form domain.
    CHECK_FALSE(closed_form_entropy(2, 2, 2, 0, 1, 0, 1.0).has_value());
}

TEST_CASE("closed-form polynomial entropy values") {
    CHECK(*closed_form_poly_entropy(3, 1, 2, 1, 0, 0, 0.0) == doctest::Approx(1.0));
    CHECK(*closed_form_poly_entropy(3, 1, 2, 1, 0, 0, 1.0) == doctest::Approx(0.0));
    CHECK(*closed_form_poly_entropy(3, 1, 2, 1, 0, 0, -1.0) == doctest::Approx(0.0));
    // Balanced words k(r+q) = l(r-p) have bounded orbits: poly rate 0 at t=0.
    CHECK(*closed_form_poly_entropy(3, 1, 2, 1, -3, 0, 0.0) == doctest::Approx(0.0));
    // r = p never contributes polynomial growth.
    CHECK(*closed_form_poly_entropy(2, 2, 2, 5, 0, 1, 0.0) == doctest::Approx(0.0));
    CHECK_FALSE(closed_form_poly_entropy(2, 2, 2, 0, 2, 0, 0.0).has_value());
}

TEST_CASE("distance sums") {
    CHECK(ext_distance({}, 1.0) == doctest::Approx(0.0));
    CHECK(std::isinf(log_ext_distance({}, 1.0)));
    CHECK(ext_distance({{0, 3}}, 0.7) == doctest::Approx(3.0));
    CHECK(ext_distance({{-2, 1}, {0, 2}}, 1.0) == doctest::Approx(std::exp(2.0) + 2.0));
    CHECK(log_ext_distance({{0, 3}}, 0.0) == doctest::Approx(std::log(3.0)));
    // log-sum-exp stays finite where a naive sum overflows.
    CHECK(log_ext_distance({{-1000, 1}}, 1.0) == doctest::Approx(1000.0));
}

TEST_CASE("shift words iterate exactly") {
    const Algebra A(3, 1, 2);
    const FunctorWord w = must_parse(A, "S^2");
    IterateOptions opt;
    opt.n_max = 8;
    const EntropySeries s = iterate_series(A, w, opt);
    REQUIRE(s.samples.size() == 9);
    for (int n = 0; n <= 8; ++n)
        CHECK(s.samples[static_cast<size_t>(n)] == DegreeVector{{-2 * n, A.dim()}});
    for (double t : {-1.0, 0.5, 1.0}) {
        const FitResult fit = estimate_entropy(s, t);
        CHECK(fit.value == doctest::Approx(2.0 * t).epsilon(1e-12));
        CHECK(fit.residual_rms < 1e-9);
        const FitResult poly = estimate_poly_entropy(s, t, 2.0 * t);
        CHECK(std::fabs(poly.value) < 1e-9);
    }
}

TEST_CASE("single X twist series on Lambda(3,1,2)") {
    const Algebra A(3, 1, 2);
    const FunctorWord w = must_parse(A, "X^1");
    IterateOptions opt;
    opt.n_max = 12;
    const EntropySeries s = iterate_series(A, w, opt);
    REQUIRE(s.samples.size() == 13);
    CHECK(s.samples[0] == DegreeVector{{0, A.dim()}});
    const int bound = 2 * (A.p() + A.q()) * (A.p() + A.q());
    for (const DegreeVector& dims : s.samples)
        for (const auto& [d, n] : dims) {
            CHECK(n >= 1);
            CHECK(n <= bound);
            CHECK(d <= 0);
        }
    // After 12 = 4 (q+r) twists the support reaches exactly -r * 4 = -8.
    CHECK(s.samples[12].begin()->first == -8);

    // Estimators agree with each other and the closed form at the exact
    // support points.
    for (double t : {-1.0, 1.0}) {
        const FitResult fit = estimate_entropy(s, t);
        const double sup = estimate_entropy_support(s, t);
        const double closed = *closed_form_entropy(3, 1, 2, 1, 0, 0, t);
        CHECK(sup == doctest::Approx(closed).epsilon(1e-9));
        CHECK(std::fabs(fit.value - sup) < 0.1);
    }
}

TEST_CASE("iterate options guard the budget") {
    const Algebra A(3, 1, 2);
    const FunctorWord w = must_parse(A, "X^1");
    IterateOptions opt;
    opt.n_max = 4;
    opt.summand_budget_per_n = 0; // trivially exceeded
    CHECK_THROWS_AS(iterate_series(A, w, opt), std::runtime_error);
}

TEST_CASE("reports evaluate grids and serialize") {
    const Algebra A(3, 1, 2);
    const FunctorWord w = must_parse(A, "S^3");
    IterateOptions opt;
    opt.n_max = 6;
    const EntropySeries s = iterate_series(A, w, opt);
    const EntropyReport rep =
        compare_report(A, s, {-1.0, 0.5, 1.0}, 1e-6, ReportKind::Entropy);
    CHECK(rep.pass);
    REQUIRE(rep.points.size() == 3);
    for (const ReportPoint& pt : rep.points) {
        CHECK(pt.pass);
        CHECK(pt.fitted_h == doctest::Approx(3.0 * pt.t).epsilon(1e-9));
        CHECK(pt.closed_h == doctest::Approx(3.0 * pt.t).epsilon(1e-12));
    }

    const std::string json = report_to_json(rep, 42);
    const auto j = nlohmann::json::parse(json);
    CHECK(j["p"] == 3);
    CHECK(j["seed"] == 42);
    CHECK(j["kind"] == "entropy");
    CHECK(j["pass"] == true);
    CHECK(j["points"].size() == 3);
    CHECK(j["points"][0].contains("fitted_h"));

    const std::string csv = series_to_csv(s);
    CHECK(csv.rfind("n,degree,dim\n", 0) == 0);
    CHECK(csv.find("0,0,11") != std::string::npos);
}

TEST_CASE("poly-entropy estimator recovers exact and affine power laws") {
    // Synthetic series with delta'(n, 0) = n^2: log-log is exactly linear,
    // so the fitted exponent must be 2 to machine precision.
    EntropySeries sq;
    sq.samples.resize(65);
    for (int n = 0; n <= 64; ++n) sq.samples[static_cast<size_t>(n)] = {{0, n * n + (n == 0)}};
    CHECK(estimate_poly_entropy(sq, 0.0, 0.0).value == doctest::Approx(2.0).epsilon(1e-9));

    // Affine growth a n + b converges to exponent 1 like 1 - b/(a n), so a
    // long synthetic series must sit close to 1.
    EntropySeries aff;
    aff.samples.resize(4097);
    for (int n = 0; n <= 4096; ++n) aff.samples[static_cast<size_t>(n)] = {{0, 3 * n + 11}};
    CHECK(std::fabs(estimate_poly_entropy(aff, 0.0, 0.0).value - 1.0) < 0.01);
}

TEST_CASE("polynomial entropy of a linear-growth orbit trends to one") {
    const Algebra A(3, 1, 2);
    const FunctorWord w = must_parse(A, "X^1");
    IterateOptions opt;
    opt.n_max = 96;
    const EntropySeries s = iterate_series(A, w, opt);
    // Total dimension grows like n/3 + dim(Lambda), so the fitted log-log
    // slope at finite n sits below its limit 1 by roughly 3 dim(Lambda)/n;
    // assert a loose band here plus improvement as the window doubles.
    EntropySeries s48 = s;
    s48.samples.resize(49);
    const FitResult poly48 = estimate_poly_entropy(s48, 0.0, 0.0);
    const FitResult poly96 = estimate_poly_entropy(s, 0.0, 0.0);
    CHECK(std::fabs(poly48.value - 1.0) < 0.5);
    CHECK(std::fabs(poly96.value - 1.0) < std::fabs(poly48.value - 1.0));
    // At t = +-1 the exponential term dominates or the sum is bounded:
    // polynomial correction fitted against the closed h stays near 0.
    for (double t : {-1.0, 1.0}) {
        const double h = *closed_form_entropy(3, 1, 2, 1, 0, 0, t);
        const FitResult p = estimate_poly_entropy(s48, t, h);
        CHECK(std::fabs(p.value) < 0.2);
    }
}

TEST_CASE("bounded orbits have zero entropy at every t") {
    // r = p: X^{p+q} is a pure shift, so the orbit of Lambda is periodic up
    // to shift and delta' stays exactly periodic after degree reindexing.
    const Algebra A(2, 2, 2);
    const FunctorWord w = must_parse(A, "X^1");
    IterateOptions opt;
    opt.n_max = 32;
    const EntropySeries s = iterate_series(A, w, opt);
    for (double t : {-1.0, 0.0, 1.0}) {
        const FitResult fit = estimate_entropy(s, t);
        CHECK(std::fabs(fit.value - 0.5 * t) < 0.12);
        const FitResult poly = estimate_poly_entropy(s, t, 0.5 * t);
        CHECK(std::fabs(poly.value) < 0.25);
    }
}

} // TEST_SUITE
