#include "twistcat/entropy.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace twistcat {

EntropySeries iterate_series(const Algebra& A, const FunctorWord& w, const IterateOptions& opt) {
    EntropySeries s;
    s.p = A.p();
    s.q = A.q();
    s.r = A.r();
    s.word = w.canonical();
    s.net_x = w.net_x;
    s.net_y = w.net_y;
    s.net_s = w.net_s;

    const ExceptionalCycle X = build_X(A);
    std::optional<ExceptionalCycle> Y;
    const bool uses_y = std::any_of(w.steps.begin(), w.steps.end(),
                                    [](const WordStep& st) { return st.gen == Generator::TwistY; });
    if (uses_y) Y = build_Y(A);

    const int pq = A.p() + A.q();
    const int dim_bound = opt.dim_bound_factor * 2 * pq * pq;

    ProjComplex cur = algebra_stalk(A);
    for (int n = 0; n <= opt.n_max; ++n) {
        if (n > 0) cur = apply_word(w, X, Y ? &*Y : nullptr, cur);
        DegreeVector dims = cohomology_dims(cur);
        for (const auto& [deg, dim] : dims)
            if (dim > dim_bound)
                throw std::runtime_error("cohomology dimension " + std::to_string(dim) + " in degree " +
                                         std::to_string(deg) + " at iterate " + std::to_string(n) +
                                         " exceeds the bound " + std::to_string(dim_bound));
        if (cur.total_summands() > opt.summand_budget_per_n * (n + 1))
            throw std::runtime_error("complex size " + std::to_string(cur.total_summands()) +
                                     " at iterate " + std::to_string(n) + " exceeds the linear budget");
        s.samples.push_back(std::move(dims));
    }
    return s;
}

double ext_distance(const DegreeVector& dims, double t) {
    std::vector<double> terms;
    terms.reserve(dims.size());
    for (const auto& [deg, dim] : dims) terms.push_back(static_cast<double>(dim) * std::exp(-deg * t));
    std::sort(terms.begin(), terms.end(),
              [](double x, double y) { return std::abs(x) < std::abs(y); });
    double sum = 0.0;
    for (double x : terms) sum += x;
    return sum;
}

double log_ext_distance(const DegreeVector& dims, double t) {
    if (dims.empty()) return -std::numeric_limits<double>::infinity();
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [deg, dim] : dims) m = std::max(m, std::log(static_cast<double>(dim)) - deg * t);
    double acc = 0.0;
    for (const auto& [deg, dim] : dims) acc += std::exp(std::log(static_cast<double>(dim)) - deg * t - m);
    return m + std::log(acc);
}

namespace {

struct Window {
    int n_lo, n_hi;
};

Window tail_window(int n_max, double tail_fraction) {
    int count = static_cast<int>(std::floor(tail_fraction * n_max));
    count = std::max(2, std::min(count, n_max));
    return {n_max - count + 1, n_max};
}

FitResult fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[static_cast<size_t>(i)];
        sy += ys[static_cast<size_t>(i)];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[static_cast<size_t>(i)] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<size_t>(i)] - my);
    }
    FitResult out;
    out.n_used = n;
    out.value = sxx > 0 ? sxy / sxx : 0.0;
    const double b = my - out.value * mx;
    double rss = 0;
    for (int i = 0; i < n; ++i) {
        const double e = ys[static_cast<size_t>(i)] - (out.value * xs[static_cast<size_t>(i)] + b);
        rss += e * e;
    }
    out.residual_rms = std::sqrt(rss / n);
    return out;
}

} // namespace

FitResult estimate_entropy(const EntropySeries& s, double t, double tail_fraction) {
    const int n_max = static_cast<int>(s.samples.size()) - 1;
    if (n_max < 2) throw std::invalid_argument("estimate_entropy: need at least 2 iterates");
    const Window w = tail_window(n_max, tail_fraction);
    std::vector<double> xs, ys;
    for (int n = w.n_lo; n <= w.n_hi; ++n) {
        const double y = log_ext_distance(s.samples[static_cast<size_t>(n)], t);
        if (!std::isfinite(y)) throw std::runtime_error("estimate_entropy: vanishing iterate in the window");
        xs.push_back(static_cast<double>(n));
        ys.push_back(y);
    }
    return fit_slope(xs, ys);
}

double estimate_entropy_support(const EntropySeries& s, double t) {
    const int n_max = static_cast<int>(s.samples.size()) - 1;
    if (n_max < 1) throw std::invalid_argument("estimate_entropy_support: need at least 1 iterate");
    const DegreeVector& last = s.samples[static_cast<size_t>(n_max)];
    if (last.empty()) throw std::runtime_error("estimate_entropy_support: vanishing final iterate");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [deg, dim] : last) best = std::max(best, -static_cast<double>(deg) * t);
    return best / n_max;
}

FitResult estimate_poly_entropy(const EntropySeries& s, double t, double h, double tail_fraction) {
    const int n_max = static_cast<int>(s.samples.size()) - 1;
    if (n_max < 2) throw std::invalid_argument("estimate_poly_entropy: need at least 2 iterates");
    const Window w = tail_window(n_max, tail_fraction);
    std::vector<double> xs, ys;
    for (int n = std::max(1, w.n_lo); n <= w.n_hi; ++n) {
        const double y = log_ext_distance(s.samples[static_cast<size_t>(n)], t) - n * h;
        if (!std::isfinite(y)) throw std::runtime_error("estimate_poly_entropy: vanishing iterate in the window");
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(y);
    }
    return fit_slope(xs, ys);
}

std::optional<double> closed_form_entropy(int p, int q, int r, int k, int l, int s, double t) {
    if (r == p) {
        if (l != 0) return std::nullopt;
        return s * t + k * (static_cast<double>(p) / (p + q)) * t;
    }
    const double x_rate = k * (static_cast<double>(r) / (r + q)) * t;
    const double y_rate = l * (static_cast<double>(r) / (r - p)) * t;
    return s * t + std::max(x_rate, y_rate);
}

std::optional<double> closed_form_poly_entropy(int p, int q, int r, int k, int l, int s, double t) {
    (void)s;
    if (r == p) {
        if (l != 0) return std::nullopt;
        return 0.0;
    }
    // Away from t = 0 the distance grows cleanly exponentially; at t = 0 the
    // two linear-growth regimes collide and contribute one factor of n
    // unless they cancel identically.
    if (t != 0.0) return 0.0;
    return k * (r + q) == l * (r - p) ? 0.0 : 1.0;
}

EntropyReport compare_report(const Algebra& A, const EntropySeries& s,
                             const std::vector<double>& t_grid, double tol, ReportKind kind,
                             PolyHSource poly_h, double tail_fraction) {
    EntropyReport rep;
    rep.series = s;
    rep.tol = tol;
    rep.kind = kind;
    rep.pass = true;
    for (double t : t_grid) {
        ReportPoint pt;
        pt.t = t;
        pt.fitted_h = estimate_entropy(s, t, tail_fraction).value;
        const auto ch = closed_form_entropy(A.p(), A.q(), A.r(), s.net_x, s.net_y, s.net_s, t);
        const auto cp = closed_form_poly_entropy(A.p(), A.q(), A.r(), s.net_x, s.net_y, s.net_s, t);
        if (!ch || !cp) throw std::invalid_argument("compare_report: word outside the closed-form domain");
        pt.closed_h = *ch;
        pt.closed_poly = *cp;
        const double h_for_poly = poly_h == PolyHSource::Closed ? pt.closed_h : pt.fitted_h;
        pt.fitted_poly = estimate_poly_entropy(s, t, h_for_poly, tail_fraction).value;
        const double delta = kind == ReportKind::Entropy ? std::abs(pt.fitted_h - pt.closed_h)
                                                         : std::abs(pt.fitted_poly - pt.closed_poly);
        pt.pass = delta <= tol;
        rep.pass = rep.pass && pt.pass;
        rep.points.push_back(pt);
    }
    return rep;
}

namespace {

// Render through %.12g so reports are stable across platforms, then hand the
// value back to the JSON writer.
double g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

} // namespace

std::string report_to_json(const EntropyReport& rep, std::uint64_t seed, int indent) {
    nlohmann::ordered_json j;
    j["schema"] = "entropy-report/1";
    j["p"] = rep.series.p;
    j["q"] = rep.series.q;
    j["r"] = rep.series.r;
    j["word"] = rep.series.word;
    j["n_max"] = static_cast<int>(rep.series.samples.size()) - 1;
    j["seed"] = seed;
    j["tol"] = g12(rep.tol);
    j["kind"] = rep.kind == ReportKind::Entropy ? "entropy" : "polyentropy";
    j["points"] = nlohmann::ordered_json::array();
    for (const ReportPoint& pt : rep.points) {
        nlohmann::ordered_json pj;
        pj["t"] = g12(pt.t);
        pj["fitted_h"] = g12(pt.fitted_h);
        pj["closed_h"] = g12(pt.closed_h);
        pj["fitted_poly"] = g12(pt.fitted_poly);
        pj["closed_poly"] = g12(pt.closed_poly);
        pj["pass"] = pt.pass;
        j["points"].push_back(std::move(pj));
    }
    j["pass"] = rep.pass;
    return j.dump(indent);
}

std::string series_to_csv(const EntropySeries& s) {
    std::ostringstream os;
    os << "n,degree,dim\n";
    for (size_t n = 0; n < s.samples.size(); ++n)
        for (const auto& [deg, dim] : s.samples[n]) os << n << "," << deg << "," << dim << "\n";
    return os.str();
}

} // namespace twistcat
