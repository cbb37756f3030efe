// The bound path algebra Lambda(p,q,r) and its path combinatorics.
//
// Quiver: vertices -q,...,-1,0,1,...,p-1.  Arrows are labelled by an integer
// a in [-q, p-1]:
//
//   cycle part (a in [0, p-1]):  alpha_a : (a+1 mod p) -> a
//   line part  (a in [-q, -1]):  alpha_a : a+1 -> a
//
// so the cycle 0 -> p-1 -> ... -> 1 -> 0 is traversed by alpha_{p-1}, then
// alpha_{p-2}, ..., then alpha_0, and the line feeds -q <- ... <- 0.
//
// Relations: the r consecutive arrow pairs on the cycle
//
//   traverse alpha_{(j+1) mod p}, then alpha_j,   j = p-1, p-2, ..., p-r
//
// are zero.  Parameter domain: p >= 1, q >= 0, 1 <= r <= p.  The algebra is
// finite dimensional; it has finite global dimension iff r < p.
//
// Conventions used throughout the engine:
//  * Paths are stored as the list of arrow labels in traversal order
//    (first arrow walked = first entry): a path with arrows [f, g] walks f
//    then g, so its source is f's source and its target is g's target.
//    In function-composition notation that path is g.f.
//  * Hom(P_a, P_b) between right projectives P_v = e_v.Lambda has as basis
//    the surviving paths with source b and target a, acting by left
//    multiplication on basis paths of P_a.
//  * Composition of homs Hom(P_b,P_c) x Hom(P_a,P_b) -> Hom(P_a,P_c)
//    concatenates the representing paths (the P_c-path first in traversal
//    order); see hom_compose.

#pragma once

#include "twistcat/rational.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistcat {

struct Path {
    int src = 0;             // source vertex of the first arrow (or of e_v)
    int tgt = 0;             // target vertex of the last arrow
    std::vector<int> arrows; // arrow labels in traversal order; empty = e_src

    int length() const { return static_cast<int>(arrows.size()); }
    bool operator==(const Path&) const = default;
};

class Algebra {
public:
    // Throws std::invalid_argument outside the domain p>=1, q>=0, 1<=r<=p.
    Algebra(int p, int q, int r);

    int p() const { return p_; }
    int q() const { return q_; }
    int r() const { return r_; }
    bool finite_global_dimension() const { return r_ < p_; }

    // --- vertices -----------------------------------------------------
    int min_vertex() const { return -q_; }
    int max_vertex() const { return p_ - 1; }
    int num_vertices() const { return p_ + q_; }
    bool has_vertex(int v) const { return v >= -q_ && v <= p_ - 1; }
    // All vertices, descending p-1,...,0,...,-q (the order used for the
    // regular module and for stable JSON/report output).
    std::vector<int> vertices() const;

    // --- arrows and relations -----------------------------------------
    bool has_arrow(int a) const { return a >= -q_ && a <= p_ - 1; }
    int arrow_src(int a) const; // alpha_a : arrow_src(a) -> arrow_tgt(a)
    int arrow_tgt(int a) const;
    // Is "traverse alpha_first, then alpha_then" one of the r defining
    // relation pairs?
    bool is_relation_pair(int first, int then) const;
    // The relation pairs in the (first, then) traversal encoding, ordered
    // j = p-1 down to p-r.
    std::vector<std::pair<int, int>> relation_pairs() const;

    // --- the path basis ------------------------------------------------
    // Surviving paths (those avoiding every relation pair) enumerated once
    // in the constructor: trivial paths first (v = -q..p-1), then by length,
    // extending in id order.  Path ids index this global basis; dim() is its
    // size.
    int num_paths() const { return static_cast<int>(paths_.size()); }
    const Path& path(int id) const { return paths_[static_cast<size_t>(id)]; }
    int dim() const { return num_paths(); }

    int trivial_path(int v) const; // id of e_v
    int arrow_path(int a) const;   // id of the length-1 path alpha_a

    // Compose in traversal order: walk x, then y.  Returns the id of the
    // surviving composite, or -1 if tgt(x) != src(y) or the composite dies
    // on a relation.  (In function-composition notation this is y . x.)
    int compose_traversal(int x, int y) const;

    // Basis of Hom(P_a, P_b): ids of surviving paths with src == b and
    // tgt == a, in id order.
    const std::vector<int>& hom_basis(int a, int b) const;

    // Basis of P_v = e_v.Lambda: ids of surviving paths with src == v.
    const std::vector<int>& projective_basis(int v) const;
    int projective_dim(int v) const;

    // --- naming ---------------------------------------------------------
    // "e<v>" for trivial paths, "a<i>*a<j>*..." (traversal order) otherwise.
    std::string path_name(int id) const;
    // Inverse of path_name; nullopt if unknown/killed/malformed.
    std::optional<int> parse_path(const std::string& name) const;

private:
    int p_, q_, r_;
    std::vector<Path> paths_;
    std::map<std::pair<int, std::vector<int>>, int> path_index_; // (src, arrows) -> id
    // hom_bases_[vi(a)][vi(b)] = basis of Hom(P_a, P_b); vi maps vertex to
    // a dense 0-based index.
    std::vector<std::vector<std::vector<int>>> hom_bases_;
    std::vector<std::vector<int>> proj_bases_;

    int vi(int v) const { return v + q_; }
};

// A Q-linear combination of parallel paths (same src, same tgt), i.e. an
// element of some Hom(P_a, P_b).  Terms are sorted by path id, coefficients
// nonzero.
struct AlgElem {
    std::vector<std::pair<int, Rat>> terms;

    bool is_zero() const { return terms.empty(); }
    static AlgElem zero() { return {}; }
    static AlgElem single(int path_id, Rat coeff = Rat(1));

    AlgElem& add_term(int path_id, const Rat& coeff); // merges, drops zeros
    AlgElem operator+(const AlgElem&) const;
    AlgElem operator-() const;
    AlgElem scaled(const Rat&) const;
    bool operator==(const AlgElem&) const = default;
};

// Compose g in Hom(P_b,P_c) with f in Hom(P_a,P_b) to g.f in Hom(P_a,P_c):
// bilinear extension of path concatenation (g's path traversed first).
AlgElem hom_compose(const Algebra& A, const AlgElem& g, const AlgElem& f);

// Coefficient of the trivial path in x (x an endomorphism elem of some
// Hom(P_v,P_v)); zero if none.  The "scalar part" that decides whether an
// entry is a unit during minimization.
Rat scalar_part(const Algebra& A, const AlgElem& x);

// x with the trivial-path term removed (the radical part).
AlgElem radical_part(const Algebra& A, const AlgElem& x);

} // namespace twistcat
