/* Enumeration of heaps, trusses, modules and heaps of modules up to
 * isomorphism; canonical forms, isomorphism testing with witnesses, and
 * deterministic corpus generation. */

#pragma once

#include "finalg/affine.hpp"
#include "finalg/hmodule.hpp"

namespace finalg {

struct CanonicalForm {
    std::string kind;
    std::vector<int> orders;
    std::vector<Elem> tables;  // canonical concatenated tables
    uint64_t hash = 0;

    bool operator==(const CanonicalForm& o) const {
        return kind == o.kind && orders == o.orders && tables == o.tables;
    }
    bool operator<(const CanonicalForm& o) const;
};

// Lexicographically minimal concatenated tables over carrier relabelings.
// Modules and heaps of modules relabel the carrier only; the truss stays
// pointwise fixed.
CanonicalForm canonical_form(const FiniteHeap& h);
CanonicalForm canonical_form(const FiniteTruss& t);
CanonicalForm canonical_form(const FiniteTModule& m);
CanonicalForm canonical_form(const FiniteHeapOfModules& hm);

struct IsoResult {
    bool isomorphic = false;
    std::optional<Table1> witness;  // carrier bijection when isomorphic
};
IsoResult are_isomorphic(const FiniteHeap& x, const FiniteHeap& y);
IsoResult are_isomorphic(const FiniteTruss& x, const FiniteTruss& y);
IsoResult are_isomorphic(const FiniteTModule& x, const FiniteTModule& y);
// By default the truss is fixed pointwise; pass true to also allow truss
// relabelings (the coarser equivalence).
IsoResult are_isomorphic(const FiniteHeapOfModules& x, const FiniteHeapOfModules& y,
                         bool allow_truss_relabeling = false);

// One heap per isomorphism class: abelian groups of order n by cyclic
// decomposition, sorted by canonical form. n = 0 gives the empty heap.
std::vector<FiniteHeap> enumerate_abelian_heaps(int n);

// Backtracking over multiplication tables with incremental associativity
// and distributivity checks, across all heaps of order n. `node_budget`
// caps search nodes (ResourceError beyond it).
std::vector<FiniteTruss> enumerate_trusses(int n, bool up_to_iso,
                                           long long node_budget = 50'000'000);

// All module actions of t on carriers of order m_order.
std::vector<FiniteTModule> enumerate_modules(const FiniteTruss& t, int m_order, bool up_to_iso,
                                             long long node_budget = 50'000'000);

// All heaps of modules over t with carrier order m_order: enumerated as
// T-group actions on each abelian group, mapped through from_module.
std::vector<FiniteHeapOfModules> enumerate_hmodules(const FiniteTruss& t, int m_order,
                                                    bool up_to_iso,
                                                    long long node_budget = 50'000'000);

// All T-group actions of t on groups of order g_order.
std::vector<FiniteTGroup> enumerate_tgroups(const FiniteTruss& t, int g_order,
                                            long long node_budget = 50'000'000);

struct CorpusLimits {
    int heap_max = 8;
    int truss_max = 3;
    int module_t_max = 3;
    int module_m_max = 3;
    int hmodule_t_max = 2;
    int hmodule_m_max = 4;
};

template <class T>
struct Labeled {
    T value;
    std::string name;  // <kind>-<orders>-<canonical hash>
};

struct Corpus {
    CorpusLimits limits;
    std::vector<Labeled<FiniteHeap>> heaps;
    std::vector<Labeled<FiniteTruss>> trusses;
    std::vector<Labeled<FiniteTModule>> modules;
    std::vector<Labeled<FiniteHeapOfModules>> hmodules;
};

// Deterministic: entries sorted by canonical form, identical output for
// any worker count.
Corpus corpus_generate(const CorpusLimits& limits = {}, int jobs = 1);

}  // namespace finalg
