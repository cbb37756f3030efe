#include "twistcat/cli.h"

#include "twistcat/entropy.h"
#include "twistcat/parallel.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace twistcat::cli {

namespace {

// Presets exercised by bare `verify` (no --p/--q/--r): the standard finite
// examples plus the two infinite-global-dimension ones.
const std::vector<std::array<int, 3>> kPresets = {
    {2, 1, 1}, {3, 1, 2}, {4, 1, 3}, {3, 0, 2}, {4, 2, 1}, {2, 2, 2}, {1, 0, 1},
};

int ceil_div(int n, int d) { return (n + d - 1) / d; }

// "a:b:step" inclusive range, or a single value.
std::vector<double> parse_t_grid(const std::string& text) {
    std::vector<double> out;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        size_t used = 0;
        const double t = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad t value '" + text + "'");
        out.push_back(t);
        return out;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("t range must be start:stop:step");
    const double start = std::stod(text.substr(0, c1));
    const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (step <= 0) throw std::invalid_argument("t range step must be positive");
    for (double t = start; t <= stop + 1e-12; t += step) out.push_back(std::fabs(t) < 1e-15 ? 0.0 : t);
    if (out.empty()) throw std::invalid_argument("empty t grid");
    return out;
}

// Resolve an output path against TWISTCAT_OUTPUT_DIR for relative names.
std::string resolve_output_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("TWISTCAT_OUTPUT_DIR");
    if (!dir || !*dir) return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

void write_file(const std::string& path, const std::string& content) {
    const std::string full = resolve_output_path(path);
    std::ofstream f(full);
    if (!f) throw std::invalid_argument("cannot open output file '" + full + "'");
    f << content;
}

// Start-object selector for `apply`: regular | P<v> | S<i> | Q<i>.
ProjComplex select_module(const Algebra& A, const std::string& name) {
    if (name == "regular" || name == "Lambda" || name == "lambda") return algebra_stalk(A);
    if (name.size() >= 2 && (name[0] == 'P' || name[0] == 'S' || name[0] == 'Q')) {
        int v = 0;
        try {
            size_t used = 0;
            v = std::stoi(name.substr(1), &used);
            if (used != name.size() - 1) throw std::invalid_argument(name);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad module name '" + name + "'");
        }
        if (name[0] == 'P') return projective_stalk(A, v);
        if (name[0] == 'S') return simple_resolution(A, v);
        return quotient_resolution(A, v);
    }
    throw std::invalid_argument("bad module name '" + name + "' (expected regular, P<v>, S<i> or Q<i>)");
}

void print_cohomology_table(const ProjComplex& c, std::ostream& os) {
    os << "object: " << describe(c) << "\n";
    const DegreeVector h = cohomology_dims(c);
    if (h.empty()) {
        os << "cohomology: 0\n";
        return;
    }
    os << "support: [" << h.begin()->first << ", " << h.rbegin()->first << "]\n";
    for (const auto& [deg, dim] : h) os << "  H^" << deg << " = " << dim << "\n";
}

// ---- subcommand: algebra ---------------------------------------------------

int cmd_algebra(const Algebra& A, std::ostream& out) {
    nlohmann::ordered_json j;
    j["schema"] = "algebra/1";
    j["p"] = A.p();
    j["q"] = A.q();
    j["r"] = A.r();
    j["dim"] = A.dim();
    j["gldim"] = A.finite_global_dimension() ? "finite" : "infinite";
    j["vertices"] = nlohmann::ordered_json::array();
    for (int v = A.min_vertex(); v <= A.max_vertex(); ++v) j["vertices"].push_back(v);
    j["arrows"] = nlohmann::ordered_json::array();
    for (int a = A.min_vertex(); a <= A.max_vertex(); ++a) {
        nlohmann::ordered_json aj;
        aj["name"] = "a" + std::to_string(a);
        aj["source"] = A.arrow_src(a);
        aj["target"] = A.arrow_tgt(a);
        j["arrows"].push_back(std::move(aj));
    }
    j["relations"] = nlohmann::ordered_json::array();
    for (const auto& [first, then] : A.relation_pairs())
        j["relations"].push_back({"a" + std::to_string(first), "a" + std::to_string(then)});
    j["projectives"] = nlohmann::ordered_json::object();
    for (int v = A.min_vertex(); v <= A.max_vertex(); ++v)
        j["projectives"]["P" + std::to_string(v)] = A.projective_dim(v);
    out << j.dump(2) << "\n";
    return 0;
}

// ---- subcommand: apply ------------------------------------------------------

struct ApplyConfig {
    std::string word;
    int n = 1;
    std::string module = "regular";
    std::string input_file;
    std::string output_file;
};

int cmd_apply(const Algebra& A, const ApplyConfig& cfg, std::ostream& out, std::ostream& err) {
    ProjComplex start;
    if (!cfg.input_file.empty()) {
        std::ifstream f(cfg.input_file);
        if (!f) throw std::invalid_argument("cannot open input file '" + cfg.input_file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        start = from_json(A, ss.str());
    } else {
        start = select_module(A, cfg.module);
    }

    ProjComplex cur = start;
    if (!cfg.word.empty()) {
        std::string perr;
        const auto w = parse_word(cfg.word, A, &perr);
        if (!w) throw std::invalid_argument("bad word: " + perr);
        const ExceptionalCycle X = build_X(A);
        std::optional<ExceptionalCycle> Y;
        if (w->net_y != 0 || std::any_of(w->steps.begin(), w->steps.end(), [](const WordStep& st) {
                return st.gen == Generator::TwistY;
            }))
            Y = build_Y(A);
        for (int i = 0; i < cfg.n; ++i) cur = apply_word(*w, X, Y ? &*Y : nullptr, cur);
    }

    const std::string json = to_json(cur) + "\n";
    if (!cfg.output_file.empty()) {
        write_file(cfg.output_file, json);
        err << "wrote " << resolve_output_path(cfg.output_file) << "\n";
    } else {
        out << json;
    }
    print_cohomology_table(cur, err);
    return 0;
}

// ---- subcommands: entropy / polyentropy --------------------------------------

struct EntropyConfig {
    std::string word;
    int n_max = 64;
    std::string t_text = "-1:1:0.5";
    double tol = 0.05;
    double tail = 0.5;
    std::string csv_file;
    std::uint64_t seed = 1;
    std::string poly_h = "closed";
    ReportKind kind = ReportKind::Entropy;
};

int cmd_entropy(const Algebra& A, const EntropyConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string perr;
    const auto w = parse_word(cfg.word, A, &perr);
    if (!w) throw std::invalid_argument("bad word: " + perr);
    if (cfg.n_max < 1) throw std::invalid_argument("--n must be >= 1");
    const std::vector<double> grid = parse_t_grid(cfg.t_text);

    err << "seed=" << cfg.seed << "\n";
    IterateOptions opt;
    opt.n_max = cfg.n_max;
    const EntropySeries series = iterate_series(A, *w, opt);
    const PolyHSource ph = cfg.poly_h == "fitted" ? PolyHSource::Fitted : PolyHSource::Closed;
    const EntropyReport rep = compare_report(A, series, grid, cfg.tol, cfg.kind, ph, cfg.tail);
    if (!cfg.csv_file.empty()) {
        write_file(cfg.csv_file, series_to_csv(series));
        err << "wrote " << resolve_output_path(cfg.csv_file) << "\n";
    }
    out << report_to_json(rep, cfg.seed) << "\n";
    return rep.pass ? 0 : 1;
}

// ---- subcommand: verify -------------------------------------------------------

struct Check {
    std::string name;
    std::string failure; // empty = ok
};

void check_iso(std::vector<Check>& out, const std::string& name, const ProjComplex& got,
               const ProjComplex& want, std::uint64_t seed) {
    Check c{name, {}};
    if (!is_isomorphic(got, want, seed))
        c.failure = "got " + describe(minimize(got)) + ", want " + describe(minimize(want));
    out.push_back(std::move(c));
}

std::vector<Check> checks_cycles(const Algebra& A, std::uint64_t seed) {
    std::vector<Check> out;
    std::vector<ExceptionalCycle> cycles;
    cycles.push_back(build_X(A));
    if (A.finite_global_dimension()) cycles.push_back(build_Y(A));
    for (const ExceptionalCycle& E : cycles) {
        Check exc{E.name + " cycle is exceptional (length " + std::to_string(E.length()) + ")", {}};
        const auto bad = verify_exceptional(E);
        if (!bad.empty()) {
            exc.failure = bad.front();
            for (size_t i = 1; i < bad.size(); ++i) exc.failure += "; " + bad[i];
        }
        out.push_back(std::move(exc));
        // Twist action on the cycle's own objects: T_E(E_i) is E_{i-1}
        // shifted by 1 - k_{i-1} (cyclic indices).
        for (int i = 1; i <= E.length(); ++i) {
            const int prev = i == 1 ? E.length() : i - 1;
            const ProjComplex got = twist(E, E.object(i));
            const ProjComplex want = shift(E.object(prev), 1 - E.k_of(prev));
            check_iso(out,
                      "T_" + E.name + "(" + E.name + "_" + std::to_string(i) + ") = Sigma^" +
                          std::to_string(1 - E.k_of(prev)) + " " + E.name + "_" + std::to_string(prev),
                      got, want, seed);
        }
    }
    return out;
}

std::vector<Check> checks_relations(const Algebra& A, std::uint64_t seed) {
    std::vector<Check> out;
    const ExceptionalCycle X = build_X(A);
    const ProjComplex lambda = algebra_stalk(A);
    if (A.finite_global_dimension()) {
        const ExceptionalCycle Y = build_Y(A);
        ProjComplex lhs = lambda;
        for (int i = 0; i < A.r() + A.q(); ++i) lhs = twist(X, lhs);
        ProjComplex rhs = lambda;
        for (int i = 0; i < A.p() - A.r(); ++i) rhs = twist(Y, rhs);
        rhs = shift(rhs, A.r());
        check_iso(out,
                  "T_X^" + std::to_string(A.r() + A.q()) + "(Lambda) = Sigma^" + std::to_string(A.r()) +
                      " T_Y^" + std::to_string(A.p() - A.r()) + "(Lambda)",
                  lhs, rhs, seed);
    } else {
        ProjComplex lhs = lambda;
        for (int i = 0; i < A.p() + A.q(); ++i) lhs = twist(X, lhs);
        check_iso(out, "T_X^" + std::to_string(A.p() + A.q()) + "(Lambda) = Sigma^" + std::to_string(A.p()) + "(Lambda)",
                  lhs, shift(lambda, A.p()), seed);
    }
    return out;
}

std::vector<Check> checks_support(const Algebra& A, int n_hi) {
    std::vector<Check> out;
    const int p = A.p(), q = A.q(), r = A.r();
    const ExceptionalCycle X = build_X(A);
    ProjComplex cur = algebra_stalk(A);
    for (int n = 1; n <= n_hi; ++n) {
        cur = twist(X, cur);
        const auto sup = cohomology_support(cur);
        Check c{"support T_X^" + std::to_string(n) + "(Lambda)", {}};
        const int lo_min = -r * ceil_div(n, q + r), lo_max = -r * (n / (q + r));
        // r < p: top degree is exactly 0 and the bottom falls in the bracket.
        // r = p: the whole support lies inside the bracket (iterates pick up
        // genuine downward shifts every full period, so the top drops too).
        const bool ok = sup && (r < p ? sup->second == 0 && sup->first >= lo_min && sup->first <= lo_max
                                      : sup->first >= lo_min && sup->second <= lo_max);
        if (!ok) {
            std::ostringstream os;
            os << "got [" << (sup ? sup->first : 0) << ", " << (sup ? sup->second : 0) << "], want ";
            if (r < p)
                os << "max 0 and min in [" << lo_min << ", " << lo_max << "]";
            else
                os << "support inside [" << lo_min << ", " << lo_max << "]";
            c.failure = os.str();
        }
        out.push_back(std::move(c));
    }
    if (A.finite_global_dimension()) {
        const ExceptionalCycle Y = build_Y(A);
        cur = algebra_stalk(A);
        for (int n = 1; n <= n_hi; ++n) {
            cur = twist(Y, cur);
            const auto sup = cohomology_support(cur);
            const int want_hi = r * ceil_div(n, p - r);
            Check c{"support T_Y^" + std::to_string(n) + "(Lambda)", {}};
            if (!sup || sup->first != 0 || sup->second != want_hi) {
                std::ostringstream os;
                os << "got [" << (sup ? sup->first : 0) << ", " << (sup ? sup->second : 0) << "], want [0, " << want_hi
                   << "]";
                c.failure = os.str();
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<ProjComplex> probe_objects(const Algebra& A) {
    std::vector<ProjComplex> probes;
    probes.push_back(algebra_stalk(A));
    probes.push_back(projective_stalk(A, A.max_vertex()));
    probes.push_back(shift(projective_stalk(A, 0), 2));
    if (A.q() >= 1) probes.push_back(quotient_resolution(A, 0));
    if (A.finite_global_dimension()) probes.push_back(simple_resolution(A, 1));
    return probes;
}

std::vector<Check> checks_roundtrip(const Algebra& A, std::uint64_t seed) {
    std::vector<Check> out;
    std::vector<ExceptionalCycle> cycles;
    cycles.push_back(build_X(A));
    if (A.finite_global_dimension()) cycles.push_back(build_Y(A));
    const auto probes = probe_objects(A);
    for (const ExceptionalCycle& E : cycles)
        for (size_t pi = 0; pi < probes.size(); ++pi) {
            const ProjComplex& c = probes[pi];
            const std::string tag = E.name + " probe " + std::to_string(pi) + " (" + describe(c) + ")";
            check_iso(out, "roundtrip inv(twist) " + tag, inverse_twist(E, twist(E, c)), c, seed);
            check_iso(out, "roundtrip twist(inv) " + tag, twist(E, inverse_twist(E, c)), c, seed);
        }
    return out;
}

std::vector<Check> checks_faithful(const Algebra& A) {
    std::vector<Check> out;
    std::vector<ExceptionalCycle> cycles;
    cycles.push_back(build_X(A));
    if (A.finite_global_dimension()) cycles.push_back(build_Y(A));
    const auto probes = probe_objects(A);
    for (const ExceptionalCycle& E : cycles)
        for (size_t i = 0; i < probes.size(); ++i)
            for (size_t j = 0; j < probes.size(); ++j) {
                if (i == j && i > 0) continue; // keep the pair list small
                const DegreeVector before = hom_dims_all(probes[i], probes[j]);
                const DegreeVector after = hom_dims_all(twist(E, probes[i]), twist(E, probes[j]));
                Check c{"T_" + E.name + " preserves Hom dims, probes (" + std::to_string(i) + "," +
                            std::to_string(j) + ")",
                        {}};
                if (before != after) c.failure = "graded Hom dimensions changed";
                out.push_back(std::move(c));
            }
    return out;
}

int cmd_verify(const std::optional<std::array<int, 3>>& params, const std::string& suite,
               std::uint64_t seed, std::ostream& out, std::ostream& err) {
    err << "seed=" << seed << "\n";
    std::vector<std::array<int, 3>> targets;
    if (params) targets.push_back(*params);
    else targets = kPresets;

    int total = 0, failed = 0;
    for (const auto& [p, q, r] : targets) {
        const Algebra A(p, q, r);
        std::vector<Check> checks;
        auto run_suite = [&](const std::string& name) {
            if (name == "cycles") return checks_cycles(A, seed);
            if (name == "relations") return checks_relations(A, seed);
            if (name == "support") return checks_support(A, 6);
            if (name == "roundtrip") return checks_roundtrip(A, seed);
            if (name == "faithful") return checks_faithful(A);
            throw std::invalid_argument("unknown suite '" + name + "'");
        };
        if (suite == "all") {
            for (const char* s : {"cycles", "relations", "support", "roundtrip", "faithful"}) {
                auto cs = run_suite(s);
                checks.insert(checks.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
            }
        } else {
            checks = run_suite(suite);
        }
        const std::string prefix = "Lambda(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                   std::to_string(r) + ") ";
        for (const Check& c : checks) {
            ++total;
            if (c.failure.empty()) {
                out << "ok   " << prefix << c.name << "\n";
            } else {
                ++failed;
                out << "FAIL " << prefix << c.name << ": " << c.failure << "\n";
            }
        }
    }
    out << (failed == 0 ? "passed " : "FAILED ") << (total - failed) << "/" << total << " checks\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"derived-discrete twist/entropy engine"};
    app.require_subcommand(1);

    bool serial = false;
    app.add_flag("--serial", serial, "force serial execution of parallel kernels");

    int p = 0, q = 0, r = 0;
    auto add_pqr = [&](CLI::App* cmd, bool required) {
        auto* op = cmd->add_option("--p", p, "cycle length p >= 1");
        auto* oq = cmd->add_option("--q", q, "line length q >= 0");
        auto* orr = cmd->add_option("--r", r, "relation count 1 <= r <= p");
        if (required) {
            op->required();
            oq->required();
            orr->required();
        }
    };

    auto* c_algebra = app.add_subcommand("algebra", "describe Lambda(p,q,r) as JSON");
    add_pqr(c_algebra, true);

    auto* c_apply = app.add_subcommand("apply", "apply a functor word to a complex");
    ApplyConfig acfg;
    add_pqr(c_apply, true);
    c_apply->add_option("--word", acfg.word, "functor word, e.g. \"X^2 Y^-1 S^1\" (omit for the identity)");
    c_apply->add_option("--n", acfg.n, "apply the word this many times")->check(CLI::NonNegativeNumber);
    c_apply->add_option("--module", acfg.module, "start object: regular | P<v> | S<i> | Q<i>");
    c_apply->add_option("--input", acfg.input_file, "start from a complex JSON file instead");
    c_apply->add_option("--output", acfg.output_file, "write the result JSON here instead of stdout");

    EntropyConfig ecfg;
    auto* c_entropy = app.add_subcommand("entropy", "iterate a word on Lambda and fit entropy");
    auto* c_poly = app.add_subcommand("polyentropy", "iterate a word on Lambda and fit polynomial entropy");
    for (CLI::App* cmd : {c_entropy, c_poly}) {
        add_pqr(cmd, true);
        cmd->add_option("--word", ecfg.word, "functor word")->required();
        cmd->add_option("--n", ecfg.n_max, "number of iterates")->check(CLI::PositiveNumber);
        cmd->add_option("--t", ecfg.t_text, "t grid: single value or start:stop:step");
        cmd->add_option("--tol", ecfg.tol, "pass tolerance |fitted - closed|");
        cmd->add_option("--tail", ecfg.tail, "tail fraction used for fits");
        cmd->add_option("--csv", ecfg.csv_file, "also dump the series as CSV to this file");
        cmd->add_option("--seed", ecfg.seed, "random seed (logged; reserved for iso checks)");
    }
    c_poly->add_option("--poly-h", ecfg.poly_h, "h used inside the poly fit: closed | fitted")
        ->check(CLI::IsMember({"closed", "fitted"}));

    auto* c_verify = app.add_subcommand("verify", "run structural verification suites");
    std::string suite = "all";
    std::uint64_t vseed = 1;
    add_pqr(c_verify, false);
    c_verify->add_option("--suite", suite, "cycles | relations | support | roundtrip | faithful | all")
        ->check(CLI::IsMember({"cycles", "relations", "support", "roundtrip", "faithful", "all"}));
    c_verify->add_option("--seed", vseed, "random seed for isomorphism checks (logged)");

    std::vector<const char*> argv;
    argv.push_back("twistcat");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (serial) set_exec_mode(ExecMode::Serial);

    try {
        if (c_algebra->parsed()) {
            const Algebra A(p, q, r);
            return cmd_algebra(A, out);
        }
        if (c_apply->parsed()) {
            const Algebra A(p, q, r);
            return cmd_apply(A, acfg, out, err);
        }
        if (c_entropy->parsed() || c_poly->parsed()) {
            const Algebra A(p, q, r);
            ecfg.kind = c_poly->parsed() ? ReportKind::PolyEntropy : ReportKind::Entropy;
            if (c_poly->parsed() && c_poly->count("--tol") == 0) {
                // Poly fits converge logarithmically; default to a looser
                // tolerance unless the user overrides.
                ecfg.tol = 0.1;
            }
            return cmd_entropy(A, ecfg, out, err);
        }
        if (c_verify->parsed()) {
            std::optional<std::array<int, 3>> params;
            if (c_verify->count("--p") || c_verify->count("--q") || c_verify->count("--r")) {
                if (!(c_verify->count("--p") && c_verify->count("--q") && c_verify->count("--r"))) {
                    err << "error: verify needs all of --p/--q/--r or none\n";
                    return 2;
                }
                params = std::array<int, 3>{p, q, r};
            }
            return cmd_verify(params, suite, vseed, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 1; // failed numeric/verification rail
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace twistcat::cli
