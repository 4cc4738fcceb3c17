/* Finite abelian heaps: a carrier {0..n-1} with a ternary bracket table.
 * Conversions to and from abelian groups, translations, sub-heap
 * congruences and morphisms. */

#pragma once

#include "finalg/common.hpp"
#include "finalg/group.hpp"

namespace finalg {

struct FiniteHeap {
    int order = 0;
    Table3 ternary;  // order^3, row-major (a,b,c)

    Elem at(Elem a, Elem b, Elem c) const {
        return ternary[(size_t(a) * order + b) * order + c];
    }
    bool operator==(const FiniteHeap& o) const {
        return order == o.order && ternary == o.ternary;
    }
};

struct HeapMorphism {
    int source_order = 0;
    int target_order = 0;
    Table1 values;  // source_order entries into [0, target_order)
};

struct Translation {
    int order = 0;
    Elem a = 0, b = 0;
    Table1 perm;  // x -> [x,a,b]
};

// Validates the heap axioms. Associativity runs the full n^5 loop for
// n <= 12 and the retract reduction above that (witnesses stay
// deterministic in both regimes).
ValidationReport validate_heap(const FiniteHeap& h);

FiniteHeap heap_from_group(const FiniteAbelianGroup& g);

// The group with add(x,y) = [x,e,y], neutral e. Throws MathError on an
// empty heap.
FiniteAbelianGroup retract(const FiniteHeap& h, Elem e);

Translation translation(const FiniteHeap& h, Elem a, Elem b);

// The translation group: distinct permutations tau_a^b under composition,
// listed in first-occurrence order over (a,b). `tau_index` maps the pair
// (a,b) to the element index.
struct TranslationGroup {
    FiniteAbelianGroup group;
    std::vector<Table1> perms;       // one permutation per group element
    Table2 tau_index;                // n*n -> element index
};
TranslationGroup translation_group(const FiniteHeap& h);

// Sub-heap equivalence classes and the quotient heap. S must be a
// non-empty sub-heap; otherwise MathError with the failing triple.
struct HeapQuotient {
    std::vector<int> class_of;        // carrier -> class id
    std::vector<std::vector<Elem>> classes;
    FiniteHeap quotient;
};
HeapQuotient subheap_relation(const FiniteHeap& h, const ElemSet& s);

bool is_subheap(const FiniteHeap& h, const ElemSet& s, std::string* witness = nullptr);

// f preserves the bracket; on failure reports the first violating triple.
bool is_heap_morphism(const Table1& f, const FiniteHeap& src, const FiniteHeap& dst,
                      std::string* witness = nullptr);

// True iff S is non-empty and closed under x-y+z in G. Computed twice
// (sub-heap closure and coset-of-subgroup characterisation); the two
// verdicts are asserted equal.
bool coset_test(const FiniteAbelianGroup& g, const ElemSet& s);

// All heap morphisms src -> dst, via the retract decomposition: each
// morphism is an additive map of retracts followed by a translation.
std::vector<Table1> heap_morphisms(const FiniteHeap& src, const FiniteHeap& dst);

}  // namespace finalg
