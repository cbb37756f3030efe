// Exceptional cycles over Lambda(p,q,r) and their twist functors, realized
// as executable operations on complexes of projectives.
//
// An exceptional n-cycle E = (E_1,...,E_n) with degree vector
// k = (k_1,...,k_n) drives the twist
//
//   T_E(c) = minimize(cone(ev : F_E(c) -> c)),
//   F_E(c) = (+)_{i,m} Hom_K(Sigma^m E_i, c) (x) Sigma^m E_i,
//
// with ev the evaluation chain map assembled from a cocycle basis of each
// Hom complex.  The inverse twist is the dual construction
// T'_E(c) = minimize(Sigma^{-1} cone(c -> F'_E(c))) along the coevaluation.
//
// The two standard cycles of the derived-discrete algebras:
//   X-cycle (length q+r):  Sigma^{p-j} P_j for j = p-r+1..p-1, then the
//     quotients P_0/P_-1, ..., P_{-q+1}/P_{-q}, then P_{-q};
//     k = (1,...,1,1-r).
//   Y-cycle (length p-r, finite global dimension only): S_{p-r}, ..., S_1;
//     k = (1,...,1,r+1).

#pragma once

#include "twistcat/complex.h"

#include <optional>
#include <string>
#include <vector>

namespace twistcat {

struct ExceptionalCycle {
    const Algebra* alg = nullptr;
    std::string name;                  // "X" or "Y" for the built-ins
    std::vector<ProjComplex> objects;  // E_1..E_n (index 0 = E_1)
    std::vector<int> k;                // degree vector, same length

    int length() const { return static_cast<int>(objects.size()); }
    const ProjComplex& object(int i) const { return objects[static_cast<size_t>(i - 1)]; }
    int k_of(int i) const { return k[static_cast<size_t>(i - 1)]; } // i in 1..n, cyclic NOT applied
};

// Builders for the standard cycles.  build_Y requires r < p (throws
// std::invalid_argument otherwise).
ExceptionalCycle build_X(const Algebra& A);
ExceptionalCycle build_Y(const Algebra& A);

// Check the defining Hom-vanishing pattern by direct computation:
//  * n >= 2: graded End(E_i) is K.id in degree 0; Hom(E_i, Sigma^d E_{i+1})
//    is 1-dimensional, concentrated in d = k_i (indices cyclic); all other
//    pairs vanish in every degree.
//  * n == 1: End has exactly {deg 0: K.id, deg k_1: K} (the Serre class
//    doubles back onto the single object).
// Returns a list of human-readable violations; empty means the cycle
// verifies.
std::vector<std::string> verify_exceptional(const ExceptionalCycle& E);

// F_E(c): direct sum over i and Hom degrees of shifted copies of the E_i,
// together with the evaluation map onto c.  Summand bookkeeping is exposed
// for tests.
struct BigFSummand {
    int cycle_index; // i in 1..n
    int shift_k;     // the copy is Sigma^{shift_k} E_i
    int multiplicity;
};
struct BigF {
    ProjComplex total;              // the direct sum, in summand order
    std::vector<BigFSummand> parts; // grouped bookkeeping
    ChainMap ev;                    // total -> c  (valid while both live)

    // ev.src points at our own `total`; keep it bound across moves.
    BigF() = default;
    BigF(const BigF&) = delete;
    BigF& operator=(const BigF&) = delete;
    BigF(BigF&& o) noexcept
        : total(std::move(o.total)), parts(std::move(o.parts)), ev(std::move(o.ev)) {
        if (ev.src) ev.src = &total;
    }
    BigF& operator=(BigF&& o) noexcept {
        total = std::move(o.total);
        parts = std::move(o.parts);
        ev = std::move(o.ev);
        if (ev.src) ev.src = &total;
        return *this;
    }
};

// Assemble F_E(c) and ev.  `c` must outlive the returned object.
BigF big_F(const ExceptionalCycle& E, const ProjComplex& c);

// T_E(c) = minimize(cone(ev)).  Result is minimal and normalized.
ProjComplex twist(const ExceptionalCycle& E, const ProjComplex& c);
// Quasi-inverse twist via the coevaluation c -> F'_E(c).
ProjComplex inverse_twist(const ExceptionalCycle& E, const ProjComplex& c);

// --- functor words -----------------------------------------------------------
//
// Grammar (case-insensitive, whitespace-separated):  token := GEN | GEN^INT
// with GEN in {X, Y, S}; S is the shift Sigma.  Negative exponents give the
// inverse twist / negative shift.  Examples: "X^3", "x y^-2 s", "S^-1 X^1".

enum class Generator { TwistX, TwistY, Shift };

struct WordStep {
    Generator gen;
    int exponent; // nonzero
};

struct FunctorWord {
    std::vector<WordStep> steps; // applied left to right
    // Net exponents (k, l, s) = (#X, #Y, #S with signs).
    int net_x = 0, net_y = 0, net_s = 0;

    std::string canonical() const; // "X^k Y^l S^s"-style rendering of steps
};

// Parse; error string on bad grammar, or on Y when r = p (no Y-cycle).
std::optional<FunctorWord> parse_word(const std::string& text, const Algebra& A,
                                      std::string* error = nullptr);

// Apply one full word.  X/Y twists use the given cycles; Y must be present
// if the word uses it.
ProjComplex apply_word(const FunctorWord& w, const ExceptionalCycle& X,
                       const ExceptionalCycle* Y, const ProjComplex& c);

} // namespace twistcat
