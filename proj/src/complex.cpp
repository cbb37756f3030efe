#include "twistcat/complex.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistcat {

namespace {
const std::vector<int> kNoTerms{};

// Position of a path id inside the (sorted) projective basis of its source.
int basis_pos(const std::vector<int>& basis, int path_id) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), path_id);
    return static_cast<int>(it - basis.begin());
}
} // namespace

bool EntryMatrix::is_zero() const {
    for (const AlgElem& e : a)
        if (!e.is_zero()) return false;
    return true;
}

const std::vector<int>& ProjComplex::term(int d) const {
    if (!has_degree(d)) return kNoTerms;
    return terms[static_cast<size_t>(d - lo)];
}

int ProjComplex::term_size(int d) const { return static_cast<int>(term(d).size()); }

const EntryMatrix* ProjComplex::diff(int d) const {
    if (empty() || d < lo || d >= hi()) return nullptr;
    return &diffs[static_cast<size_t>(d - lo)];
}

int ProjComplex::total_summands() const {
    int n = 0;
    for (const auto& t : terms) n += static_cast<int>(t.size());
    return n;
}

void ProjComplex::validate() const {
    if (empty()) {
        if (!diffs.empty()) throw std::logic_error("empty complex with differentials");
        return;
    }
    if (!alg) throw std::logic_error("complex without algebra");
    if (diffs.size() + 1 != terms.size()) throw std::logic_error("diffs/terms size mismatch");
    for (const auto& t : terms)
        for (int v : t)
            if (!alg->has_vertex(v)) throw std::logic_error("invalid vertex label in terms");
    for (size_t i = 0; i < diffs.size(); ++i) {
        const EntryMatrix& d = diffs[i];
        if (d.rows != static_cast<int>(terms[i + 1].size()) || d.cols != static_cast<int>(terms[i].size()))
            throw std::logic_error("differential shape mismatch at degree " + std::to_string(lo + static_cast<int>(i)));
        for (int j = 0; j < d.rows; ++j)
            for (int k = 0; k < d.cols; ++k)
                for (const auto& [pid, c] : d.at(j, k).terms) {
                    const Path& pa = alg->path(pid);
                    // Hom(P_s, P_t) basis paths run from t to s.
                    if (pa.src != terms[i + 1][static_cast<size_t>(j)] || pa.tgt != terms[i][static_cast<size_t>(k)])
                        throw std::logic_error("differential entry not parallel to its Hom space");
                    if (c == 0) throw std::logic_error("stored zero coefficient");
                }
    }
    for (size_t i = 0; i + 1 < diffs.size(); ++i) {
        const EntryMatrix& d0 = diffs[i];
        const EntryMatrix& d1 = diffs[i + 1];
        for (int j = 0; j < d1.rows; ++j)
            for (int k = 0; k < d0.cols; ++k) {
                AlgElem acc;
                for (int m = 0; m < d0.rows; ++m)
                    acc = acc + hom_compose(*alg, d1.at(j, m), d0.at(m, k));
                if (!acc.is_zero())
                    throw std::logic_error("d.d != 0 at degree " + std::to_string(lo + static_cast<int>(i)));
            }
    }
}

const EntryMatrix* ChainMap::block(int d) const {
    if (d < lo || d >= lo + static_cast<int>(blocks.size())) return nullptr;
    return &blocks[static_cast<size_t>(d - lo)];
}

void ChainMap::validate() const {
    if (!src || !tgt) throw std::logic_error("chain map without endpoints");
    const Algebra& A = *src->alg;
    const int d_lo = std::min(src->empty() ? 0 : src->lo, tgt->empty() ? 0 : tgt->lo);
    const int d_hi = std::max(src->empty() ? 0 : src->hi(), tgt->empty() ? 0 : tgt->hi());
    for (int d = d_lo; d <= d_hi; ++d) {
        // d_tgt . f^d == f^{d+1} . d_src as maps src^d -> tgt^{d+1}.
        const int rows = static_cast<int>(tgt->term(d + 1).size());
        const int cols = static_cast<int>(src->term(d).size());
        if (rows == 0 || cols == 0) continue;
        const EntryMatrix* fd = block(d);
        const EntryMatrix* fd1 = block(d + 1);
        const EntryMatrix* dt = tgt->diff(d);
        const EntryMatrix* ds = src->diff(d);
        for (int j = 0; j < rows; ++j)
            for (int k = 0; k < cols; ++k) {
                AlgElem lhs, rhs;
                if (dt && fd)
                    for (int m = 0; m < fd->rows; ++m) lhs = lhs + hom_compose(A, dt->at(j, m), fd->at(m, k));
                if (fd1 && ds)
                    for (int m = 0; m < ds->rows; ++m) rhs = rhs + hom_compose(A, fd1->at(j, m), ds->at(m, k));
                if (!(lhs + -rhs).is_zero())
                    throw std::logic_error("chain-map condition fails at degree " + std::to_string(d));
            }
    }
}

// --- builders -------------------------------------------------------------

ProjComplex projective_stalk(const Algebra& A, int v) {
    if (!A.has_vertex(v)) throw std::invalid_argument("projective_stalk: no such vertex");
    ProjComplex c;
    c.alg = &A;
    c.lo = 0;
    c.terms = {{v}};
    return c;
}

ProjComplex algebra_stalk(const Algebra& A) {
    ProjComplex c;
    c.alg = &A;
    c.lo = 0;
    c.terms = {A.vertices()};
    return c;
}

ProjComplex quotient_resolution(const Algebra& A, int i) {
    if (i < -A.q() + 1 || i > 0)
        throw std::invalid_argument("quotient_resolution: need -q+1 <= i <= 0");
    ProjComplex c;
    c.alg = &A;
    c.lo = -1;
    c.terms = {{i - 1}, {i}};
    EntryMatrix d(1, 1);
    d.at(0, 0) = AlgElem::single(A.arrow_path(i - 1)); // alpha_{i-1} in Hom(P_{i-1}, P_i)
    c.diffs = {std::move(d)};
    return c;
}

ProjComplex simple_resolution(const Algebra& A, int i) {
    const int p = A.p(), r = A.r();
    if (r >= p || i < 1 || i > p - r)
        throw std::invalid_argument("simple_resolution: need r < p and 1 <= i <= p-r");
    ProjComplex c;
    c.alg = &A;
    if (i >= 2) {
        c.lo = -1;
        c.terms = {{i - 1}, {i}};
        EntryMatrix d(1, 1);
        d.at(0, 0) = AlgElem::single(A.arrow_path(i - 1));
        c.diffs = {std::move(d)};
        return c;
    }
    // S_1: the r+2-term chain P_{p-r} -> P_{p-r+1} -> ... -> P_{p-1} -> P_0
    // -> P_1 with arrow differentials along the cycle.  The relations make
    // consecutive arrows compose to zero, so d.d = 0 by construction.
    c.lo = -(r + 1);
    std::vector<int> verts;
    for (int j = p - r; j <= p - 1; ++j) verts.push_back(j);
    verts.push_back(0);
    verts.push_back(1);
    for (int v : verts) c.terms.push_back({v});
    for (size_t s = 0; s + 1 < verts.size(); ++s) {
        // The step P_j -> P_next is alpha_j: its source vertex is the next
        // one on the cycle and its target is j, so it lives in
        // Hom(P_j, P_next).
        EntryMatrix d(1, 1);
        d.at(0, 0) = AlgElem::single(A.arrow_path(verts[s]));
        c.diffs.push_back(std::move(d));
    }
    return c;
}

// --- elementary operations --------------------------------------------------

ProjComplex shift(const ProjComplex& c, int k) {
    ProjComplex out = c;
    if (out.empty() || k == 0) return out;
    out.lo = c.lo - k;
    if (k % 2 != 0)
        for (EntryMatrix& d : out.diffs)
            for (AlgElem& e : d.a) e = -e;
    return out;
}

ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.alg != b.alg) throw std::invalid_argument("direct_sum: different algebras");
    ProjComplex out;
    out.alg = a.alg;
    out.lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.hi(), b.hi());
    for (int d = out.lo; d <= hi; ++d) {
        std::vector<int> t = a.term(d);
        const std::vector<int>& tb = b.term(d);
        t.insert(t.end(), tb.begin(), tb.end());
        out.terms.push_back(std::move(t));
    }
    for (int d = out.lo; d < hi; ++d) {
        const int ra = static_cast<int>(a.term(d + 1).size()), ca = static_cast<int>(a.term(d).size());
        const int rb = static_cast<int>(b.term(d + 1).size()), cb = static_cast<int>(b.term(d).size());
        EntryMatrix m(ra + rb, ca + cb);
        if (const EntryMatrix* da = a.diff(d))
            for (int j = 0; j < ra; ++j)
                for (int k = 0; k < ca; ++k) m.at(j, k) = da->at(j, k);
        if (const EntryMatrix* db = b.diff(d))
            for (int j = 0; j < rb; ++j)
                for (int k = 0; k < cb; ++k) m.at(ra + j, ca + k) = db->at(j, k);
        out.diffs.push_back(std::move(m));
    }
    return out;
}

ProjComplex cone(const ChainMap& f) {
    const ProjComplex& A = *f.src;
    const ProjComplex& B = *f.tgt;
    if (A.empty()) return normalized(B);
    const Algebra& alg = *A.alg;
    ProjComplex out;
    out.alg = &alg;
    out.lo = std::min(A.lo - 1, B.empty() ? A.lo - 1 : B.lo);
    const int hi = std::max(A.hi() - 1, B.empty() ? A.hi() - 1 : B.hi());
    for (int d = out.lo; d <= hi; ++d) {
        std::vector<int> t = A.term(d + 1);
        const std::vector<int>& tb = B.term(d);
        t.insert(t.end(), tb.begin(), tb.end());
        out.terms.push_back(std::move(t));
    }
    // d_cone = [[-d_A, 0], [f, d_B]] on A^{d+1} (+) B^d.
    for (int d = out.lo; d < hi; ++d) {
        const int ra = static_cast<int>(A.term(d + 2).size()), ca = static_cast<int>(A.term(d + 1).size());
        const int rb = static_cast<int>(B.term(d + 1).size()), cb = static_cast<int>(B.term(d).size());
        EntryMatrix m(ra + rb, ca + cb);
        if (const EntryMatrix* da = A.diff(d + 1))
            for (int j = 0; j < ra; ++j)
                for (int k = 0; k < ca; ++k) m.at(j, k) = -da->at(j, k);
        if (const EntryMatrix* fb = f.block(d + 1))
            for (int j = 0; j < rb; ++j)
                for (int k = 0; k < ca; ++k) m.at(ra + j, k) = fb->at(j, k);
        if (const EntryMatrix* db = B.diff(d))
            for (int j = 0; j < rb; ++j)
                for (int k = 0; k < cb; ++k) m.at(ra + j, ca + k) = db->at(j, k);
        out.diffs.push_back(std::move(m));
    }
    return normalized(std::move(out));
}

ProjComplex normalized(ProjComplex c) {
    while (!c.terms.empty() && c.terms.front().empty()) {
        c.terms.erase(c.terms.begin());
        if (!c.diffs.empty()) c.diffs.erase(c.diffs.begin());
        ++c.lo;
    }
    while (!c.terms.empty() && c.terms.back().empty()) {
        c.terms.pop_back();
        if (!c.diffs.empty()) c.diffs.pop_back();
    }
    if (c.terms.empty()) {
        c.lo = 0;
        c.diffs.clear();
    }
    return c;
}

// --- minimization ------------------------------------------------------------

namespace {

// Inverse of a unit u = c.e_v + rho in e_v Lambda e_v: geometric series on
// the nilpotent part.
AlgElem local_inverse(const Algebra& A, const AlgElem& u, int v) {
    const Rat c = scalar_part(A, u);
    if (c == 0) throw std::logic_error("local_inverse of a radical element");
    const Rat cinv = Rat(1) / c;
    const AlgElem t = radical_part(A, u).scaled(-cinv);
    AlgElem acc = AlgElem::single(A.trivial_path(v));
    AlgElem cur = t;
    for (int guard = 0; !cur.is_zero(); ++guard) {
        if (guard > A.dim() + 1) throw std::logic_error("non-nilpotent radical part");
        acc = acc + cur;
        cur = hom_compose(A, cur, t);
    }
    return acc.scaled(cinv);
}

void drop_row(EntryMatrix& m, int row) {
    EntryMatrix out(m.rows - 1, m.cols);
    for (int j = 0, jj = 0; j < m.rows; ++j) {
        if (j == row) continue;
        for (int k = 0; k < m.cols; ++k) out.at(jj, k) = std::move(m.at(j, k));
        ++jj;
    }
    m = std::move(out);
}

void drop_col(EntryMatrix& m, int col) {
    EntryMatrix out(m.rows, m.cols - 1);
    for (int j = 0; j < m.rows; ++j)
        for (int k = 0, kk = 0; k < m.cols; ++k) {
            if (k == col) continue;
            out.at(j, kk++) = std::move(m.at(j, k));
        }
    m = std::move(out);
}

} // namespace

bool is_minimal(const ProjComplex& c) {
    if (c.empty()) return true;
    for (const EntryMatrix& d : c.diffs)
        for (const AlgElem& e : d.a)
            if (scalar_part(*c.alg, e) != 0) return false;
    return true;
}

ProjComplex minimize(ProjComplex c) {
    if (c.empty()) return normalized(std::move(c));
    const Algebra& A = *c.alg;
    for (;;) {
        // Find a unit entry (nonzero trivial-path coefficient), lowest
        // degree first, row-major within a differential.
        int di = -1, dj = -1, dk = -1;
        for (size_t i = 0; i < c.diffs.size() && di < 0; ++i) {
            const EntryMatrix& d = c.diffs[i];
            for (int j = 0; j < d.rows && di < 0; ++j)
                for (int k = 0; k < d.cols; ++k)
                    if (scalar_part(A, d.at(j, k)) != 0) {
                        di = static_cast<int>(i);
                        dj = j;
                        dk = k;
                        break;
                    }
        }
        if (di < 0) break;

        EntryMatrix& d = c.diffs[static_cast<size_t>(di)];
        const int v = c.terms[static_cast<size_t>(di)][static_cast<size_t>(dk)];
        const AlgElem uinv = local_inverse(A, d.at(dj, dk), v);

        // Gauss step on the remaining entries of this differential:
        // d(j',k') -= d(j',k) . u^{-1} . d(j,k').
        for (int j = 0; j < d.rows; ++j) {
            if (j == dj) continue;
            const AlgElem left = hom_compose(A, d.at(j, dk), uinv);
            if (left.is_zero()) continue;
            for (int k = 0; k < d.cols; ++k) {
                if (k == dk) continue;
                const AlgElem corr = hom_compose(A, left, d.at(dj, k));
                if (!corr.is_zero()) d.at(j, k) = d.at(j, k) + -corr;
            }
        }

        // Split off the contractible summand P_v --u--> P_v: delete the
        // pivot row/column here and the matching row/column of the
        // neighbouring differentials (d.d = 0 makes those exact, no
        // correction terms).
        drop_row(d, dj);
        drop_col(d, dk);
        if (di > 0) drop_row(c.diffs[static_cast<size_t>(di - 1)], dk);
        if (di + 1 < static_cast<int>(c.diffs.size())) drop_col(c.diffs[static_cast<size_t>(di + 1)], dj);
        auto& src_t = c.terms[static_cast<size_t>(di)];
        auto& tgt_t = c.terms[static_cast<size_t>(di) + 1];
        src_t.erase(src_t.begin() + dk);
        tgt_t.erase(tgt_t.begin() + dj);
    }
    return normalized(std::move(c));
}

// --- cohomology ----------------------------------------------------------------

QMatrix expand_block(const Algebra& A, const EntryMatrix& f,
                     const std::vector<int>& src_verts, const std::vector<int>& tgt_verts) {
    std::vector<int> col_off(src_verts.size() + 1, 0), row_off(tgt_verts.size() + 1, 0);
    for (size_t k = 0; k < src_verts.size(); ++k)
        col_off[k + 1] = col_off[k] + A.projective_dim(src_verts[k]);
    for (size_t j = 0; j < tgt_verts.size(); ++j)
        row_off[j + 1] = row_off[j] + A.projective_dim(tgt_verts[j]);
    QMatrix m(row_off.back(), col_off.back());
    for (size_t j = 0; j < tgt_verts.size(); ++j) {
        const std::vector<int>& tgt_basis = A.projective_basis(tgt_verts[j]);
        for (size_t k = 0; k < src_verts.size(); ++k) {
            const AlgElem& e = f.at(static_cast<int>(j), static_cast<int>(k));
            if (e.is_zero()) continue;
            const std::vector<int>& src_basis = A.projective_basis(src_verts[k]);
            for (const auto& [u, coeff] : e.terms)
                for (size_t x = 0; x < src_basis.size(); ++x) {
                    // The map P_src -> P_tgt sends basis path b to the
                    // concatenation walking u first, then b.
                    const int y = A.compose_traversal(u, src_basis[x]);
                    if (y < 0) continue;
                    m.at(row_off[j] + basis_pos(tgt_basis, y), col_off[k] + static_cast<int>(x)) += coeff;
                }
        }
    }
    return m;
}

DegreeVector cohomology_dims(const ProjComplex& c) {
    DegreeVector out;
    if (c.empty()) return out;
    const Algebra& A = *c.alg;
    const int nd = static_cast<int>(c.diffs.size());
    std::vector<int> ranks(static_cast<size_t>(nd), 0);
    // Per-degree ranks are independent; this is the hot kernel.
    for_each_index(nd, [&](int i) {
        ranks[static_cast<size_t>(i)] =
            rank(expand_block(A, c.diffs[static_cast<size_t>(i)], c.terms[static_cast<size_t>(i)],
                              c.terms[static_cast<size_t>(i) + 1]));
    });
    for (int d = c.lo; d <= c.hi(); ++d) {
        int dim = 0;
        for (int v : c.term(d)) dim += A.projective_dim(v);
        const int rk_out = d < c.hi() ? ranks[static_cast<size_t>(d - c.lo)] : 0;
        const int rk_in = d > c.lo ? ranks[static_cast<size_t>(d - c.lo - 1)] : 0;
        const int h = dim - rk_out - rk_in;
        if (h != 0) out[d] = h;
    }
    return out;
}

std::optional<std::pair<int, int>> cohomology_support(const ProjComplex& c) {
    const DegreeVector h = cohomology_dims(c);
    if (h.empty()) return std::nullopt;
    return std::make_pair(h.begin()->first, h.rbegin()->first);
}

std::string describe(const ProjComplex& c) {
    if (c.empty()) return "0";
    std::ostringstream os;
    os << "[" << c.lo << ".." << c.hi() << "]";
    for (int d = c.lo; d <= c.hi(); ++d) {
        os << (d == c.lo ? " " : " | ") << d << ":";
        const auto& t = c.term(d);
        if (t.empty()) os << " .";
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "+P" : " P") << t[i];
    }
    return os.str();
}

} // namespace twistcat
