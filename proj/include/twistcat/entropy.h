// Entropy instrumentation: iterate a functor word on the regular module,
// record cohomology series, estimate (polynomial) entropy numerically, and
// compare against the closed forms.
//
// For G = Lambda the weighted distance at iterate n is
//   delta_n(t) = sum_d dim Hom(Lambda, Sigma^d F^n Lambda) e^{-dt}
//              = sum_d dim H^d(F^n Lambda) e^{-dt},
// the entropy h_F(t) = lim (1/n) log delta_n(t), and the polynomial entropy
// the log n-rate of delta_n(t) e^{-n h_F(t)}.
//
// Closed forms implemented (w = X^k Y^l S^s as net exponents, any k,l,s):
//   finite global dimension (r < p):
//     h_w(t)    = s t + max( l r/(r-p) t , k r/(r+q) t )
//     hpoly_w(t)= 1 at t = 0 unless k(r+q) = l(r-p), else 0; 0 at t != 0
//   infinite (r = p, word has no Y):
//     h_w(t)    = s t + k p/(p+q) t,   hpoly_w = 0 everywhere
//   pure shift words behave as k = l = 0.

#pragma once

#include "twistcat/twist.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistcat {

struct EntropySeries {
    int p = 0, q = 0, r = 0;
    std::string word;                   // canonical word text
    int net_x = 0, net_y = 0, net_s = 0;
    std::vector<DegreeVector> samples;  // samples[n] = cohomology dims of F^n(Lambda), n = 0..n_max
};

struct IterateOptions {
    int n_max = 64;
    // Safety rails; both are multiples of theory bounds, not tuning knobs.
    // Per-degree cohomology must stay <= dim_bound_factor * 2 (p+q)^2
    // (the theoretical bound has factor 1; >1 only loosens the tripwire).
    int dim_bound_factor = 1;
    // Abort if a complex exceeds summand_budget_per_n * (n+1) summands.
    int summand_budget_per_n = 64;
};

// Iterate the word on Lambda, recording one cohomology vector per step.
// Throws std::runtime_error if a safety rail trips (which would falsify
// the dimension-bound theory, so tests treat it as failure).
EntropySeries iterate_series(const Algebra& A, const FunctorWord& w, const IterateOptions& opt);

// sum_d dim e^{-dt}, accumulated from smallest to largest magnitude.
double ext_distance(const DegreeVector& dims, double t);
// log of the same, evaluated stably (log-sum-exp); -inf for the zero vector.
double log_ext_distance(const DegreeVector& dims, double t);

struct FitResult {
    double value = 0.0;        // fitted slope
    double residual_rms = 0.0; // RMS residual of the fit on the window
    int n_used = 0;            // number of sample points in the window
};

// Least-squares slope of log delta_n(t) against n over the final
// tail_fraction of the series (n >= 1).
FitResult estimate_entropy(const EntropySeries& s, double t, double tail_fraction = 0.5);
// Support-based check: (1/n_max) * max_d (-d t) over degrees present at the
// last sample (0 at t = 0).  A second, independent route to h used for
// cross-consistency.
double estimate_entropy_support(const EntropySeries& s, double t);
// Least-squares slope of (log delta_n(t) - n h) against log n over the tail
// window; h is normally the closed-form entropy at t.
FitResult estimate_poly_entropy(const EntropySeries& s, double t, double h,
                                double tail_fraction = 0.5);

// Closed forms.  Both return nullopt outside their domain (Y-twists on an
// algebra with r = p).
std::optional<double> closed_form_entropy(int p, int q, int r, int k, int l, int s, double t);
std::optional<double> closed_form_poly_entropy(int p, int q, int r, int k, int l, int s, double t);

// --- reporting -----------------------------------------------------------

struct ReportPoint {
    double t = 0.0;
    double fitted_h = 0.0;
    double closed_h = 0.0;
    double fitted_poly = 0.0;
    double closed_poly = 0.0;
    bool pass = false;
};

enum class ReportKind { Entropy, PolyEntropy }; // which fit decides `pass`

struct EntropyReport {
    EntropySeries series;     // samples retained for CSV dumps
    std::vector<ReportPoint> points;
    double tol = 0.0;
    ReportKind kind = ReportKind::Entropy;
    bool pass = false;        // all points pass
};
enum class PolyHSource { Closed, Fitted };      // h used inside the poly fit

// Evaluate the full grid.  tol bounds |fitted - closed| for the quantity
// selected by `kind`.
EntropyReport compare_report(const Algebra& A, const EntropySeries& s,
                             const std::vector<double>& t_grid, double tol,
                             ReportKind kind, PolyHSource poly_h = PolyHSource::Closed,
                             double tail_fraction = 0.5);

// JSON envelope {schema, p, q, r, word, n_max, seed, tol, kind, points, pass}
// with point records {"t", "fitted_h", "closed_h", "fitted_poly",
// "closed_poly", "pass"}; doubles rendered with %.12g.
std::string report_to_json(const EntropyReport& rep, std::uint64_t seed, int indent = 2);

// CSV of the recorded series: header "n,degree,dim", rows ascending in n
// then degree.
std::string series_to_csv(const EntropySeries& s);

} // namespace twistcat
