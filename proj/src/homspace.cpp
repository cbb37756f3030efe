// Total Hom complexes between complexes of projectives, cocycle
// representatives, and the randomized isomorphism test.

#include "twistcat/complex.h"
#include "twistcat/parallel.h"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

namespace twistcat {

namespace {
using ElemKey = std::tuple<int, int, int, int>; // (src_deg, src_col, tgt_row, path)

ElemKey key_of(const HomComplexBasisElem& e) {
    return {e.src_deg, e.src_col, e.tgt_row, e.path};
}
} // namespace

int HomComplex::dim(int n) const {
    if (basis.empty() || n < lo || n > hi()) return 0;
    return static_cast<int>(basis[static_cast<size_t>(n - lo)].size());
}

HomComplex build_hom_complex(const ProjComplex& a, const ProjComplex& b) {
    HomComplex hc;
    hc.a = &a;
    hc.b = &b;
    if (a.empty() || b.empty()) return hc;
    const Algebra& A = *a.alg;
    hc.lo = b.lo - a.hi();
    const int hi = b.hi() - a.lo;

    hc.basis.resize(static_cast<size_t>(hi - hc.lo + 1));
    std::vector<std::map<ElemKey, int>> index(hc.basis.size());
    for (int n = hc.lo; n <= hi; ++n) {
        auto& bs = hc.basis[static_cast<size_t>(n - hc.lo)];
        auto& ix = index[static_cast<size_t>(n - hc.lo)];
        for (int i = std::max(a.lo, b.lo - n); i <= std::min(a.hi(), b.hi() - n); ++i) {
            const auto& src_t = a.term(i);
            const auto& tgt_t = b.term(i + n);
            for (int col = 0; col < static_cast<int>(src_t.size()); ++col)
                for (int row = 0; row < static_cast<int>(tgt_t.size()); ++row)
                    for (int pid : A.hom_basis(src_t[static_cast<size_t>(col)], tgt_t[static_cast<size_t>(row)])) {
                        ix[{i, col, row, pid}] = static_cast<int>(bs.size());
                        bs.push_back({i, col, row, pid});
                    }
        }
    }

    if (hc.basis.size() < 2) return hc;
    hc.delta.resize(hc.basis.size() - 1);
    for (int n = hc.lo; n < hi; ++n) {
        const auto& bs = hc.basis[static_cast<size_t>(n - hc.lo)];
        const auto& next_ix = index[static_cast<size_t>(n + 1 - hc.lo)];
        QMatrix D(hc.dim(n + 1), static_cast<int>(bs.size()));
        // (delta f) = d_b . f - (-1)^n f . d_a, one column per basis element.
        const Rat tail_sign = (n % 2 == 0) ? Rat(-1) : Rat(1);
        for (int t = 0; t < static_cast<int>(bs.size()); ++t) {
            const HomComplexBasisElem& e = bs[static_cast<size_t>(t)];
            const AlgElem u = AlgElem::single(e.path);
            if (const EntryMatrix* db = b.diff(e.src_deg + n)) {
                for (int row2 = 0; row2 < db->rows; ++row2) {
                    const AlgElem comp = hom_compose(A, db->at(row2, e.tgt_row), u);
                    for (const auto& [pid, cc] : comp.terms)
                        D.at(next_ix.at({e.src_deg, e.src_col, row2, pid}), t) += cc;
                }
            }
            if (const EntryMatrix* da = a.diff(e.src_deg - 1)) {
                for (int col2 = 0; col2 < da->cols; ++col2) {
                    const AlgElem comp = hom_compose(A, u, da->at(e.src_col, col2));
                    for (const auto& [pid, cc] : comp.terms)
                        D.at(next_ix.at({e.src_deg - 1, col2, e.tgt_row, pid}), t) += tail_sign * cc;
                }
            }
        }
        hc.delta[static_cast<size_t>(n - hc.lo)] = std::move(D);
    }
    return hc;
}

DegreeVector hom_dims_all(const ProjComplex& a, const ProjComplex& b) {
    DegreeVector out;
    const HomComplex hc = build_hom_complex(a, b);
    if (hc.basis.empty()) return out;
    const int nd = static_cast<int>(hc.delta.size());
    std::vector<int> ranks(static_cast<size_t>(nd), 0);
    for_each_index(nd, [&](int i) { ranks[static_cast<size_t>(i)] = rank(hc.delta[static_cast<size_t>(i)]); });
    for (int n = hc.lo; n <= hc.hi(); ++n) {
        const int rk_out = n < hc.hi() ? ranks[static_cast<size_t>(n - hc.lo)] : 0;
        const int rk_in = n > hc.lo ? ranks[static_cast<size_t>(n - hc.lo - 1)] : 0;
        const int h = hc.dim(n) - rk_out - rk_in;
        if (h != 0) out[n] = h;
    }
    return out;
}

int hom_dim(const ProjComplex& a, const ProjComplex& b, int n) {
    const DegreeVector d = hom_dims_all(a, b);
    const auto it = d.find(n);
    return it == d.end() ? 0 : it->second;
}

std::vector<std::vector<Rat>> hom_rep_basis(const HomComplex& hc, int n) {
    std::vector<std::vector<Rat>> reps;
    if (hc.basis.empty() || n < hc.lo || n > hc.hi()) return reps;
    const int ni = n - hc.lo;
    const int dim_n = hc.dim(n);
    if (dim_n == 0) return reps;

    // Cocycles: nullspace of the outgoing delta (everything, at the top).
    std::vector<std::vector<Rat>> cycles;
    if (n == hc.hi()) {
        cycles.resize(static_cast<size_t>(dim_n), std::vector<Rat>(static_cast<size_t>(dim_n), Rat(0)));
        for (int i = 0; i < dim_n; ++i) cycles[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    } else {
        cycles = nullspace_basis(hc.delta[static_cast<size_t>(ni)]);
    }
    if (cycles.empty()) return reps;

    // Select cycles independent modulo coboundaries: run rref over
    // [image columns | cycle columns] and keep cycle columns that carry a
    // pivot.
    const QMatrix* din = n > hc.lo ? &hc.delta[static_cast<size_t>(ni - 1)] : nullptr;
    const int img_cols = din ? din->cols() : 0;
    QMatrix m(dim_n, img_cols + static_cast<int>(cycles.size()));
    if (din)
        for (int i = 0; i < dim_n; ++i)
            for (int j = 0; j < img_cols; ++j) m.at(i, j) = din->at(i, j);
    for (size_t c = 0; c < cycles.size(); ++c)
        for (int i = 0; i < dim_n; ++i) m.at(i, img_cols + static_cast<int>(c)) = cycles[c][static_cast<size_t>(i)];
    const std::vector<int> pivots = rref_in_place(m);
    for (int pc : pivots)
        if (pc >= img_cols) reps.push_back(cycles[static_cast<size_t>(pc - img_cols)]);
    return reps;
}

ChainMap cocycle_to_chain_map(const HomComplex& hc, int n, const std::vector<Rat>& coords,
                              const ProjComplex& shifted_src, const ProjComplex& b) {
    ChainMap f;
    f.src = &shifted_src;
    f.tgt = &b;
    if (shifted_src.empty()) return f;
    f.lo = shifted_src.lo;
    f.blocks.resize(shifted_src.terms.size());
    for (int j = shifted_src.lo; j <= shifted_src.hi(); ++j)
        f.blocks[static_cast<size_t>(j - f.lo)] = EntryMatrix(b.term_size(j), shifted_src.term_size(j));
    const auto& bs = hc.basis[static_cast<size_t>(n - hc.lo)];
    for (size_t t = 0; t < bs.size(); ++t) {
        if (coords[t] == 0) continue;
        // The component A^i -> B^{i+n} sits in degree i+n of the shifted
        // source Sigma^{-n} A.
        const int j = bs[t].src_deg + n;
        f.blocks[static_cast<size_t>(j - f.lo)].at(bs[t].tgt_row, bs[t].src_col).add_term(bs[t].path, coords[t]);
    }
    return f;
}

ChainMap cocycle_to_chain_map_into(const HomComplex& hc, int n, const std::vector<Rat>& coords,
                                   const ProjComplex& a, const ProjComplex& shifted_tgt) {
    ChainMap f;
    f.src = &a;
    f.tgt = &shifted_tgt;
    if (a.empty()) return f;
    f.lo = a.lo;
    f.blocks.resize(a.terms.size());
    for (int j = a.lo; j <= a.hi(); ++j)
        f.blocks[static_cast<size_t>(j - f.lo)] = EntryMatrix(shifted_tgt.term_size(j), a.term_size(j));
    const auto& bs = hc.basis[static_cast<size_t>(n - hc.lo)];
    for (size_t t = 0; t < bs.size(); ++t) {
        if (coords[t] == 0) continue;
        // The component A^i -> E^{i+n} is the degree-i block into
        // Sigma^n E, whose degree-i term is E^{i+n}.
        f.blocks[static_cast<size_t>(bs[t].src_deg - f.lo)].at(bs[t].tgt_row, bs[t].src_col).add_term(bs[t].path, coords[t]);
    }
    return f;
}

bool is_isomorphic(const ProjComplex& a, const ProjComplex& b, std::uint64_t seed) {
    ProjComplex am = minimize(a);
    ProjComplex bm = minimize(b);
    if (am.empty() || bm.empty()) return am.empty() && bm.empty();
    if (am.lo != bm.lo || am.terms.size() != bm.terms.size()) return false;
    for (size_t i = 0; i < am.terms.size(); ++i) {
        std::vector<int> ta = am.terms[i], tb = bm.terms[i];
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        if (ta != tb) return false;
    }
    // Identical minimal models: no search needed.
    if (am.terms == bm.terms && am.diffs == bm.diffs) return true;

    // Hunt for an invertible chain map among random cocycles.  Minimal
    // complexes are isomorphic iff some degree-0 cocycle has every scalar
    // block invertible (homotopies never touch scalar parts when
    // differentials are radical).
    const HomComplex hc = build_hom_complex(am, bm);
    const int ni = 0 - hc.lo;
    if (ni < 0 || ni >= static_cast<int>(hc.basis.size())) return false;
    const auto& bs = hc.basis[static_cast<size_t>(ni)];
    std::vector<std::vector<Rat>> cycles;
    if (0 == hc.hi()) {
        cycles.resize(bs.size(), std::vector<Rat>(bs.size(), Rat(0)));
        for (size_t i = 0; i < bs.size(); ++i) cycles[i][i] = 1;
    } else {
        cycles = nullspace_basis(hc.delta[static_cast<size_t>(ni)]);
    }
    if (cycles.empty()) return false;

    const Algebra& A = *am.alg;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-512, 511);
    const int trials = 40;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Rat> v(bs.size(), Rat(0));
        for (const auto& cyc : cycles) {
            const int cf = coeff(rng);
            if (cf == 0) continue;
            for (size_t i = 0; i < bs.size(); ++i) v[i] += Rat(cf) * cyc[i];
        }
        bool ok = true;
        for (int d = am.lo; d <= am.hi() && ok; ++d) {
            const int sz = am.term_size(d);
            if (sz == 0) continue;
            QMatrix S(sz, sz);
            for (size_t t = 0; t < bs.size(); ++t) {
                if (v[t] == 0 || bs[t].src_deg != d) continue;
                if (!A.path(bs[t].path).arrows.empty()) continue; // radical part: invisible mod rad
                S.at(bs[t].tgt_row, bs[t].src_col) += v[t];
            }
            ok = is_invertible(S);
        }
        if (ok) return true;
    }
    return false;
}

} // namespace twistcat
