#include "twistcat/twist.h"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace twistcat {

ExceptionalCycle build_X(const Algebra& A) {
    ExceptionalCycle E;
    E.alg = &A;
    E.name = "X";
    const int p = A.p(), q = A.q(), r = A.r();
    // Sigma^{p-j} P_j for j = p-r+1..p-1, the line quotients, then P_{-q}.
    for (int j = p - r + 1; j <= p - 1; ++j) E.objects.push_back(shift(projective_stalk(A, j), p - j));
    for (int i = 0; i >= -q + 1; --i) E.objects.push_back(quotient_resolution(A, i));
    E.objects.push_back(projective_stalk(A, -q));
    E.k.assign(E.objects.size() - 1, 1);
    E.k.push_back(1 - r);
    return E;
}

ExceptionalCycle build_Y(const Algebra& A) {
    const int p = A.p(), r = A.r();
    if (r >= p) throw std::invalid_argument("build_Y: no Y-cycle when r = p (infinite global dimension)");
    ExceptionalCycle E;
    E.alg = &A;
    E.name = "Y";
    for (int i = p - r; i >= 1; --i) E.objects.push_back(simple_resolution(A, i));
    E.k.assign(E.objects.size() - 1, 1);
    E.k.push_back(r + 1);
    return E;
}

std::vector<std::string> verify_exceptional(const ExceptionalCycle& E) {
    std::vector<std::string> bad;
    const int n = E.length();
    if (n == 0) {
        bad.push_back("cycle has no objects");
        return bad;
    }
    if (static_cast<int>(E.k.size()) != n) {
        bad.push_back("degree vector length differs from object count");
        return bad;
    }
    auto dims_text = [](const DegreeVector& d) {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (const auto& [deg, dim] : d) {
            os << (first ? "" : ", ") << deg << ":" << dim;
            first = false;
        }
        os << "}";
        return os.str();
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const DegreeVector got = hom_dims_all(E.object(i), E.object(j));
            DegreeVector want;
            if (n == 1) {
                // Single object: the identity plus the Serre class landing
                // back on E_1 in degree k_1.
                want[0] += 1;
                want[E.k_of(1)] += 1;
            } else if (i == j) {
                want[0] = 1;
            } else if (j == (i % n) + 1) {
                want[E.k_of(i)] = 1; // the one class E_i -> Sigma^{k_i} E_{i+1}
            }
            if (got != want)
                bad.push_back("Hom(E_" + std::to_string(i) + ", E_" + std::to_string(j) + ") dims " +
                              dims_text(got) + ", expected " + dims_text(want));
        }
    }
    return bad;
}

namespace {

// Shared worker for both twist directions: collect, per cycle object and
// per Hom degree, a cocycle-representative basis, the shifted copies it
// spawns, and their per-degree column offsets inside the direct sum.
struct SummandPlan {
    int cycle_index;
    int shift_k;
    std::vector<Rat> coords;   // cocycle coordinates
    ProjComplex complex;       // the shifted copy of E_i
    const HomComplex* hom = nullptr;
    int hom_degree = 0;
};

} // namespace

BigF big_F(const ExceptionalCycle& E, const ProjComplex& c) {
    BigF out;
    ProjComplex total;
    total.alg = E.alg;

    std::vector<HomComplex> homs;
    homs.reserve(static_cast<size_t>(E.length()));
    for (int i = 1; i <= E.length(); ++i) homs.push_back(build_hom_complex(E.object(i), c));

    std::vector<SummandPlan> plan;
    for (int i = 1; i <= E.length(); ++i) {
        const HomComplex& hc = homs[static_cast<size_t>(i - 1)];
        if (hc.basis.empty()) continue;
        for (int ndeg = hc.lo; ndeg <= hc.hi(); ++ndeg) {
            const auto reps = hom_rep_basis(hc, ndeg);
            if (reps.empty()) continue;
            // A degree-n cocycle class is a map Sigma^{-n} E_i -> c.
            out.parts.push_back({i, -ndeg, static_cast<int>(reps.size())});
            for (const auto& rep : reps) {
                SummandPlan sp;
                sp.cycle_index = i;
                sp.shift_k = -ndeg;
                sp.coords = rep;
                sp.complex = shift(E.object(i), -ndeg);
                sp.hom = &hc;
                sp.hom_degree = ndeg;
                plan.push_back(std::move(sp));
            }
        }
    }

    for (const SummandPlan& sp : plan) total = direct_sum(total, sp.complex);
    out.total = std::move(total);

    // Assemble the evaluation map: per degree, one column band per summand,
    // rows indexed by c.
    ChainMap ev;
    ev.src = &out.total;
    ev.tgt = &c;
    if (!out.total.empty()) {
        ev.lo = out.total.lo;
        ev.blocks.resize(out.total.terms.size());
        for (int d = out.total.lo; d <= out.total.hi(); ++d)
            ev.blocks[static_cast<size_t>(d - ev.lo)] = EntryMatrix(c.term_size(d), out.total.term_size(d));
        std::map<int, int> col_used; // per complex degree, columns filled so far
        for (const SummandPlan& sp : plan) {
            const auto& bs = sp.hom->basis[static_cast<size_t>(sp.hom_degree - sp.hom->lo)];
            for (size_t t = 0; t < bs.size(); ++t) {
                if (sp.coords[t] == 0) continue;
                // Component E_i^m -> c^{m + ndeg} lands at complex degree
                // m + ndeg of the shifted copy.
                const int d = bs[t].src_deg + sp.hom_degree;
                ev.blocks[static_cast<size_t>(d - ev.lo)]
                    .at(bs[t].tgt_row, col_used[d] + bs[t].src_col)
                    .add_term(bs[t].path, sp.coords[t]);
            }
            for (int d = sp.complex.lo; d <= sp.complex.hi(); ++d) col_used[d] += sp.complex.term_size(d);
        }
    }
    out.ev = std::move(ev);
    return out;
}

ProjComplex twist(const ExceptionalCycle& E, const ProjComplex& c) {
    const BigF bf = big_F(E, c);
    return minimize(cone(bf.ev));
}

ProjComplex inverse_twist(const ExceptionalCycle& E, const ProjComplex& c) {
    // Dual construction: coevaluation c -> F' = (+) Hom-classes into the
    // shifted cycle objects, then Sigma^{-1} cone.
    ProjComplex total;
    total.alg = E.alg;

    struct Piece {
        int shift_k;
        std::vector<Rat> coords;
        ProjComplex complex;
        const HomComplex* hom;
        int hom_degree;
    };
    std::vector<HomComplex> homs;
    homs.reserve(static_cast<size_t>(E.length()));
    for (int i = 1; i <= E.length(); ++i) homs.push_back(build_hom_complex(c, E.object(i)));

    std::vector<Piece> plan;
    for (int i = 1; i <= E.length(); ++i) {
        const HomComplex& hc = homs[static_cast<size_t>(i - 1)];
        if (hc.basis.empty()) continue;
        for (int ndeg = hc.lo; ndeg <= hc.hi(); ++ndeg) {
            const auto reps = hom_rep_basis(hc, ndeg);
            for (const auto& rep : reps)
                plan.push_back({ndeg, rep, shift(E.object(i), ndeg), &hc, ndeg});
        }
    }

    for (const Piece& sp : plan) total = direct_sum(total, sp.complex);

    ChainMap coev;
    coev.src = &c;
    coev.tgt = &total;
    if (!c.empty() && !total.empty()) {
        coev.lo = c.lo;
        coev.blocks.resize(c.terms.size());
        for (int d = c.lo; d <= c.hi(); ++d)
            coev.blocks[static_cast<size_t>(d - coev.lo)] = EntryMatrix(total.term_size(d), c.term_size(d));
        std::map<int, int> row_used;
        for (const Piece& sp : plan) {
            const auto& bs = sp.hom->basis[static_cast<size_t>(sp.hom_degree - sp.hom->lo)];
            for (size_t t = 0; t < bs.size(); ++t) {
                if (sp.coords[t] == 0) continue;
                // Component c^m -> E^{m+ndeg}: block at degree m, row inside
                // this summand's band of Sigma^{ndeg} E.
                const int d = bs[t].src_deg;
                coev.blocks[static_cast<size_t>(d - coev.lo)]
                    .at(row_used[d] + bs[t].tgt_row, bs[t].src_col)
                    .add_term(bs[t].path, sp.coords[t]);
            }
            for (int d = sp.complex.lo; d <= sp.complex.hi(); ++d) row_used[d] += sp.complex.term_size(d);
        }
    }
    return minimize(shift(cone(coev), -1));
}

// --- functor words ---------------------------------------------------------

std::string FunctorWord::canonical() const {
    std::ostringstream os;
    for (size_t i = 0; i < steps.size(); ++i) {
        const char g = steps[i].gen == Generator::TwistX ? 'X' : steps[i].gen == Generator::TwistY ? 'Y' : 'S';
        os << (i ? " " : "") << g << "^" << steps[i].exponent;
    }
    return os.str();
}

std::optional<FunctorWord> parse_word(const std::string& text, const Algebra& A, std::string* error) {
    auto fail = [&](const std::string& msg) -> std::optional<FunctorWord> {
        if (error) *error = msg;
        return std::nullopt;
    };
    FunctorWord w;
    std::istringstream is(text);
    std::string tok;
    bool any_token = false;
    while (is >> tok) {
        any_token = true;
        Generator g;
        const char head = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
        if (head == 'x') g = Generator::TwistX;
        else if (head == 'y') g = Generator::TwistY;
        else if (head == 's') g = Generator::Shift;
        else return fail("unknown generator in token '" + tok + "' (expected X, Y or S)");
        int exp = 1;
        if (tok.size() > 1) {
            if (tok[1] != '^') return fail("malformed token '" + tok + "' (expected GEN or GEN^INT)");
            const std::string es = tok.substr(2);
            try {
                size_t used = 0;
                exp = std::stoi(es, &used);
                if (used != es.size()) throw std::invalid_argument(es);
            } catch (const std::exception&) {
                return fail("bad exponent in token '" + tok + "'");
            }
        }
        if (g == Generator::TwistY && !A.finite_global_dimension())
            return fail("word uses Y but the algebra has r = p (no Y-cycle)");
        if (g == Generator::TwistX) w.net_x += exp;
        if (g == Generator::TwistY) w.net_y += exp;
        if (g == Generator::Shift) w.net_s += exp;
        if (exp != 0) w.steps.push_back({g, exp});
    }
    if (!any_token) return fail("empty functor word");
    return w;
}

ProjComplex apply_word(const FunctorWord& w, const ExceptionalCycle& X, const ExceptionalCycle* Y,
                       const ProjComplex& c) {
    ProjComplex cur = c;
    for (const WordStep& st : w.steps) {
        switch (st.gen) {
        case Generator::Shift:
            cur = shift(cur, st.exponent);
            break;
        case Generator::TwistX:
            for (int m = 0; m < std::abs(st.exponent); ++m)
                cur = st.exponent > 0 ? twist(X, cur) : inverse_twist(X, cur);
            break;
        case Generator::TwistY:
            if (!Y) throw std::invalid_argument("apply_word: word uses Y but no Y-cycle was given");
            for (int m = 0; m < std::abs(st.exponent); ++m)
                cur = st.exponent > 0 ? twist(*Y, cur) : inverse_twist(*Y, cur);
            break;
        }
    }
    return cur;
}

} // namespace twistcat
