/* Finite trusses: an abelian heap with an associative product distributing
 * over the bracket on both sides. Ring and endomorphism constructors,
 * paragons, ideals, quotients. */

#pragma once

#include "finalg/heap.hpp"

namespace finalg {

struct FiniteRing {
    FiniteAbelianGroup add;
    Table2 mul;
    std::optional<Elem> unit;  // filled by validate_ring

    int order() const { return add.order; }
    Elem times(Elem a, Elem b) const { return mul[size_t(a) * add.order + b]; }
};

struct FiniteTruss {
    FiniteHeap heap;
    Table2 mul;
    // Cached at validation; recomputation elsewhere is not allowed.
    std::optional<Elem> unit;
    std::optional<Elem> absorber;

    int order() const { return heap.order; }
    Elem times(Elem a, Elem b) const { return mul[size_t(a) * heap.order + b]; }
    Elem bracket(Elem a, Elem b, Elem c) const { return heap.at(a, b, c); }
    bool same_tables(const FiniteTruss& o) const {
        return heap == o.heap && mul == o.mul;
    }
};

ValidationReport validate_ring(FiniteRing& r);
FiniteRing ring_mod(int n);                       // Z/n with its usual product
FiniteRing ring_from_tables(int order, Table2 add, Table2 mul);

// Validates heap + truss axioms; detects and records unit and absorber.
ValidationReport validate_truss(FiniteTruss& t);

// Same checks on a const value (facts are returned in the report only).
ValidationReport validate_truss(const FiniteTruss& t);

// Builds a truss from validated tables, throwing MathError when invalid.
FiniteTruss make_truss(FiniteHeap heap, Table2 mul);

FiniteTruss truss_from_ring(const FiniteRing& r);

// Singleton truss.
FiniteTruss star_truss();

// The endomorphism truss E(H): all heap endomorphisms under pointwise
// bracket and composition. Elements are listed in lexicographic order of
// their value tables. Throws ResourceError if the element count exceeds
// `budget`.
struct EndomorphismTruss {
    FiniteTruss truss;
    std::vector<Table1> endos;  // element index -> value table
    int index_of(const Table1& f) const;
};
EndomorphismTruss endomorphism_truss(const FiniteHeap& h, int budget = 4096);

bool is_subtruss(const FiniteTruss& t, const ElemSet& s, std::string* witness = nullptr);
bool is_paragon(const FiniteTruss& t, const ElemSet& p, std::string* witness = nullptr);

enum class IdealSide { Left, Right, TwoSided };
bool is_ideal(const FiniteTruss& t, const ElemSet& i, IdealSide side,
              std::string* witness = nullptr);

struct SubsetFlag {
    ElemSet subset;
    bool subheap = false, subtruss = false, paragon = false;
    bool left_ideal = false, right_ideal = false, two_sided_ideal = false;
};
SubsetFlag classify_subset(const FiniteTruss& t, const ElemSet& s);

struct TrussQuotient {
    std::vector<int> class_of;
    std::vector<std::vector<Elem>> classes;
    FiniteTruss quotient;
};
TrussQuotient quotient_by_paragon(const FiniteTruss& t, const ElemSet& p);

bool is_truss_morphism(const Table1& f, const FiniteTruss& src, const FiniteTruss& dst,
                       std::string* witness = nullptr);
std::vector<Table1> truss_morphisms(const FiniteTruss& src, const FiniteTruss& dst);

bool is_commutative(const FiniteTruss& t);

}  // namespace finalg
