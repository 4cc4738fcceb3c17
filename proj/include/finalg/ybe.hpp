/* Shelves, spindles, racks and quandles from heaps of modules, and
 * set-theoretic Yang-Baxter solutions with non-degeneracy checks.
 * Galleries of splittings and retractions of short exact sequences. */

#pragma once

#include "finalg/hmodule.hpp"

namespace finalg {

struct BinaryStructure {
    int order = 0;
    Table2 op;  // x*y at x*order+y
    struct Flags {
        bool shelf = false;      // left self-distributive
        bool spindle = false;    // shelf + idempotent
        bool rack = false;       // shelf + unique left division
        bool quandle = false;    // spindle + rack
        bool entropic = false;
    } flags;
    std::optional<Table2> division;  // x\y when left division exists
    std::string shelf_witness, idem_witness, division_witness, entropic_witness;

    Elem at(Elem x, Elem y) const { return op[size_t(x) * order + y]; }
};

// All flags computed exhaustively; the division table is filled when each
// row is a bijection.  Idempotent entropic tables are additionally checked
// to be self-distributive on both sides (consequence used downstream).
BinaryStructure classify_binary(const Table2& op, int order);

struct YbePairMap {
    int order = 0;
    Table2 r1, r2;  // r(x,y) = (r1[x,y], r2[x,y])
    bool nondegenerate = false;
    std::optional<std::pair<Table2, Table2>> inverse;

    Elem first(Elem x, Elem y) const { return r1[size_t(x) * order + y]; }
    Elem second(Elem x, Elem y) const { return r2[size_t(x) * order + y]; }
};

// Braid relation on all order^3 triples; returns the first violating
// triple through `witness` when it fails.
bool check_ybe(const YbePairMap& r, std::string* witness = nullptr);

// m*n = Lambda(u,m,n); the result must classify as an entropic spindle.
BinaryStructure spindle_from_hmodule(const FiniteHeapOfModules& hm, Elem u);

// r(m,n) = (Lambda(u,m,n), m); must satisfy the braid relation.
YbePairMap ybe_map(const FiniteHeapOfModules& hm, Elem u);

// Requires Lambda(u*ubar, m, n) = n (MathError with witness otherwise).
// Produces an entropic quandle and an invertible non-degenerate solution
// with inverse (m,n) -> (n, Lambda(ubar,n,m)).
struct QuandleResult {
    BinaryStructure quandle;
    YbePairMap solution;
};
QuandleResult quandle_from_unit(const FiniteHeapOfModules& hm, Elem u, Elem ubar);

enum class PairVerdict { HypothesisNotSatisfied, Holds };
// Under Lambda(uv,m,n) = Lambda(vu,m,n), asserts the two-operation
// entropic interchange over all quadruples.
PairVerdict entropic_pair_check(const FiniteHeapOfModules& hm, Elem u, Elem v);

// x *_f y = x + f(y - x) for an additive endomorphism f. Asserts the
// entropic spindle classification and the mirror rule
// x *_f y = y *_{id-f} x.
BinaryStructure affine_spindle(const FiniteAbelianGroup& g, const Table1& f);

// A short exact sequence 0 -> P -> Q -> R -> 0 of Z/n-modules given by
// explicit tables. Each group must have exponent dividing n.
struct ShortExactSequence {
    int modulus = 0;
    FiniteAbelianGroup p, q, r;
    Table1 iota;  // P -> Q
    Table1 pi;    // Q -> R
};
void validate_sequence(const ShortExactSequence& s);

// All additive sections of pi (splittings), organised as a heap of
// T(Z/n)-modules with Lambda(a,tau,sigma) = a.sigma + (1-a).tau.
// `hmodule` is absent when no section exists.
struct SectionGallery {
    std::vector<Table1> maps;  // sorted value tables (sections or retractions)
    std::optional<FiniteHeapOfModules> hmodule;
};
SectionGallery splittings_gallery(const ShortExactSequence& s);

// All additive retractions of iota, dually.
SectionGallery retractions_gallery(const ShortExactSequence& s);

// Text export: header "order n nondegenerate {true|false}", then one line
// "x y -> x' y'" per pair in row-major order.
std::string export_ybe_text(const YbePairMap& r);

}  // namespace finalg
