// Bounded complexes of finitely generated projectives over Lambda(p,q,r),
// cohomological grading, and the homotopy-category toolkit on them:
// shift / cone / direct sum / minimization / cohomology / Hom-complexes /
// isomorphism testing / (de)serialization.
//
// A complex stores, per degree, the list of projective summands P_v by
// vertex label, and the differential as a matrix of algebra elements:
// entry (row j, col k) of diffs[i] lies in Hom(P_{terms[i][k]},
// P_{terms[i+1][j]}), i.e. columns index the source term, rows the target.

#pragma once

#include "twistcat/algebra.h"
#include "twistcat/parallel.h"
#include "twistcat/qmatrix.h"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistcat {

// Matrix of algebra elements; rows/cols may be 0.
struct EntryMatrix {
    int rows = 0, cols = 0;
    std::vector<AlgElem> a; // row-major

    EntryMatrix() = default;
    EntryMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    AlgElem& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const AlgElem& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool is_zero() const;
    bool operator==(const EntryMatrix&) const = default;
};

struct ProjComplex {
    const Algebra* alg = nullptr;
    int lo = 0;                          // degree of terms[0]
    std::vector<std::vector<int>> terms; // vertex labels per degree
    std::vector<EntryMatrix> diffs;      // diffs[i] : deg lo+i -> deg lo+i+1

    bool empty() const { return terms.empty(); }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool has_degree(int d) const { return !empty() && d >= lo && d <= hi(); }
    const std::vector<int>& term(int d) const;   // empty list outside range
    int term_size(int d) const;
    const EntryMatrix* diff(int d) const;        // nullptr outside range
    int total_summands() const;

    // Structural sanity: matrix shapes, entry parallelism (every entry of
    // diffs[i] lies in the right Hom space), d.d = 0.  Throws
    // std::logic_error with a description on violation.  Cheap; called by
    // the builders in tests and by the JSON reader.
    void validate() const;
};

// Degreewise map src -> tgt of chain degree 0; blocks[i] maps
// src.term(lo+i) -> tgt.term(lo+i) with the same row/col convention as
// differentials.  Blocks cover [lo, lo+blocks.size()-1]; the map is zero
// in degrees where either side has no term.
struct ChainMap {
    const ProjComplex* src = nullptr;
    const ProjComplex* tgt = nullptr;
    int lo = 0;
    std::vector<EntryMatrix> blocks;

    const EntryMatrix* block(int d) const; // nullptr if outside stored range
    // Checks the chain condition d_tgt . f == f . d_src (throws on failure).
    void validate() const;
};

// Per-degree integer vector with finite support, e.g. cohomology dimensions.
using DegreeVector = std::map<int, int>;

// --- builders ----------------------------------------------------------

// P_v concentrated in degree 0.
ProjComplex projective_stalk(const Algebra& A, int v);
// The regular module Lambda = direct sum of all P_v, degree 0 (vertex order
// Algebra::vertices()).
ProjComplex algebra_stalk(const Algebra& A);
// Minimal projective resolution of the quotient module P_i/P_{i-1} for
// -q+1 <= i <= 0:  [P_{i-1} --alpha_{i-1}--> P_i] in degrees -1, 0.
ProjComplex quotient_resolution(const Algebra& A, int i);
// Minimal projective resolution of the simple S_i for 1 <= i <= p-r (needs
// r < p).  For i >= 2 it is [P_{i-1} --alpha_{i-1}--> P_i]; for i = 1 it is
// the r+2-term chain P_{p-r} -> P_{p-r+1} -> ... -> P_{p-1} -> P_0 -> P_1
// in degrees -(r+1)..0, with arrow differentials along the cycle.
ProjComplex simple_resolution(const Algebra& A, int i);

// --- elementary operations ----------------------------------------------

// Shift by k: (shift(c,k))^d = c^{d+k}, differentials scaled by (-1)^k.
ProjComplex shift(const ProjComplex& c, int k);
// Degreewise concatenation (a's summands first), block-diagonal diff.
ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b);
// Mapping cone of a degree-0 chain map f : A -> B.  cone(f)^d =
// A^{d+1} (+) B^d with differential [[-d_A, 0], [f, d_B]].
ProjComplex cone(const ChainMap& f);
// Drop empty boundary degrees; all-empty collapses to the canonical empty
// complex (lo = 0).
ProjComplex normalized(ProjComplex c);

// Gaussian elimination of unit differential entries: repeatedly pick an
// entry with nonzero trivial-path coefficient, invert it inside the local
// endomorphism algebra (geometric series on the nilpotent part), cancel its
// row and column, and restart the scan.  The result has all differential
// entries in the radical and is homotopy equivalent to the input; on a
// complex with zero cohomology it returns the empty complex.
ProjComplex minimize(ProjComplex c);
// True iff every differential entry has zero trivial-path coefficient.
bool is_minimal(const ProjComplex& c);

// --- cohomology -----------------------------------------------------------

// dim_Q H^d(c) for every degree, computed from the expanded Q-matrices of
// the differentials (rank-nullity per degree).  Only nonzero entries are
// returned.  Respects the active execution mode (parallel.h): per-degree
// ranks are independent jobs.
DegreeVector cohomology_dims(const ProjComplex& c);
// [min, max] degree with nonzero cohomology; nullopt when c is acyclic.
std::optional<std::pair<int, int>> cohomology_support(const ProjComplex& c);

// Expand an EntryMatrix block f (mapping (+)P_{src_v} -> (+)P_{tgt_v}) to
// the Q-matrix of the induced linear map on path bases.  Row/col order:
// summands in block order, within a summand the Algebra::projective_basis
// order.
QMatrix expand_block(const Algebra& A, const EntryMatrix& f,
                     const std::vector<int>& src_verts, const std::vector<int>& tgt_verts);

// --- Hom complexes ---------------------------------------------------------

// The total Hom complex Hom(A, B) of two projective complexes, with
// Hom^n = (+)_i Hom(A^i, B^{i+n}) and differential
// (delta f) = d_B . f - (-1)^n f . d_A.  Bases are indexed by (source
// degree, source summand, target summand, algebra path); delta is stored as
// an exact Q-matrix per degree.
struct HomComplexBasisElem {
    int src_deg;  // i: component maps A^i -> B^{i+n}
    int src_col;  // summand index in A^i
    int tgt_row;  // summand index in B^{i+n}
    int path;     // algebra path id in Hom(P_src, P_tgt)
};

struct HomComplex {
    const ProjComplex* a = nullptr;
    const ProjComplex* b = nullptr;
    int lo = 0; // lowest Hom degree with a stored basis
    std::vector<std::vector<HomComplexBasisElem>> basis; // per degree lo+i
    std::vector<QMatrix> delta;                          // delta[i] : deg lo+i -> lo+i+1

    int hi() const { return lo + static_cast<int>(basis.size()) - 1; }
    int dim(int n) const;
};

HomComplex build_hom_complex(const ProjComplex& a, const ProjComplex& b);

// dim H^n(Hom(a,b)) = dim Hom_K(a, b[n]); all degrees / one degree.
DegreeVector hom_dims_all(const ProjComplex& a, const ProjComplex& b);
int hom_dim(const ProjComplex& a, const ProjComplex& b, int n);

// Representatives of a basis of H^n(Hom(a,b)), as coordinate vectors in
// hc.basis[n - hc.lo].  Cocycles completed modulo coboundaries.
std::vector<std::vector<Rat>> hom_rep_basis(const HomComplex& hc, int n);

// Realize a degree-n Hom-complex cocycle as a degree-0 chain map
// shift(a, -n) -> b.  (The (-1)^n on the shifted differential makes the
// cocycle condition and the chain-map condition coincide literally, so the
// components transfer with no extra signs.)  The returned map references
// `shifted_src` and `b`, which must outlive it.
ChainMap cocycle_to_chain_map(const HomComplex& hc, int n, const std::vector<Rat>& coords,
                              const ProjComplex& shifted_src, const ProjComplex& b);
// Dual direction: a degree-n cocycle of Hom(a, e) as a chain map
// a -> shift(e, n).
ChainMap cocycle_to_chain_map_into(const HomComplex& hc, int n, const std::vector<Rat>& coords,
                                   const ProjComplex& a, const ProjComplex& shifted_tgt);

// --- isomorphism ------------------------------------------------------------

// Decide K^b(proj)-isomorphism.  Both sides are minimized; then summand
// multisets per degree must match; then we search for an invertible
// degree-0 chain map among random rational combinations of a cocycle basis
// of Hom^0 (invertibility of all scalar blocks witnesses an isomorphism of
// minimal complexes).  Sound: a reported isomorphism always exists.
// Complete up to Schwartz-Zippel failure probability < 2^-40 per call with
// the default trial budget.
bool is_isomorphic(const ProjComplex& a, const ProjComplex& b, std::uint64_t seed = 0x5eedULL);

// --- serialization ------------------------------------------------------------

// JSON shape:
//   {"terms": {"<deg>": [v, ...], ...},
//    "diffs": {"<deg>": [[{"<path>": "<rat>", ...}, ...], ...], ...}}
// with diffs["<d>"] the matrix d^d as rows of {path-name: coefficient}
// objects.  Degree keys are decimal integers; absent degrees are empty.
// to_json emits keys in ascending degree order and normalizes the complex
// first; from_json accepts any order and validates against the algebra.
std::string to_json(const ProjComplex& c, int indent = 2);
// Throws std::runtime_error with a line/field message on malformed input.
ProjComplex from_json(const Algebra& A, const std::string& text);

// One-line structural summary, e.g. "P-1 --> P0 (+) P2  [degrees -1..0]":
// used by the CLI and in test failure messages.
std::string describe(const ProjComplex& c);

} // namespace twistcat
