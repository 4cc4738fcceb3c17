/* Heaps of modules: a truss T acting on an abelian heap M through a
 * ternary table Lambda : T x M x M -> M. Axioms, derived identities,
 * conversion to and from modules, stabilizers and annihilators,
 * congruences, cross products, endomorphism trusses and derivations. */

#pragma once

#include "finalg/module.hpp"

namespace finalg {

struct FiniteHeapOfModules {
    FiniteTruss truss;
    FiniteHeap heap;   // carrier M
    Table3 lambda;     // |T| * |M| * |M|, row-major (t, m, n)

    Elem lam(Elem t, Elem m, Elem n) const {
        return lambda[(size_t(t) * heap.order + m) * heap.order + n];
    }
    int torder() const { return truss.order(); }
    int morder() const { return heap.order; }
    bool same_tables(const FiniteHeapOfModules& o) const {
        return truss.same_tables(o.truss) && heap == o.heap && lambda == o.lambda;
    }
};

// Checks the four axiom families: bracket morphism in the first and third
// entries, T-associativity, and the base change law.
ValidationReport validate_hmodule(const FiniteHeapOfModules& hm);
FiniteHeapOfModules make_hmodule(FiniteTruss t, FiniteHeap carrier, Table3 lambda);

// Consequences of the axioms, each checked exhaustively: idempotency
// Lambda(t,m,m) = m, the swap law, compatibility with outer translations,
// the middle-entry morphism law, and the equivalence of the two base-change
// formulations. Failure on a valid input is a ContractViolation.
ValidationReport derived_identities(const FiniteHeapOfModules& hm);

// Lambda(t,e,n) = [t.n, t.e, e]; the heap-of-modules of the induced actions.
FiniteHeapOfModules from_module(const FiniteTModule& m);

// Fix the middle entry: t ._e m = Lambda(t,e,m); e becomes an absorber.
FiniteTModule to_module(const FiniteHeapOfModules& hm, Elem e);

// {u : Lambda(u,m,n) = n}; all of T on the empty carrier. Checked to be a
// sub-truss and (when non-empty) a paragon, and to agree with the
// module-level stabilizer at every basepoint.
ElemSet stabilizer_hm(const FiniteHeapOfModules& hm);

// {z : Lambda(z,m,n) = m}; all of T on the empty carrier. Checked to be a
// two-sided ideal when non-empty and to agree with the module-level
// annihilator at every basepoint.
ElemSet annihilator_hm(const FiniteHeapOfModules& hm);

struct HModClass {
    bool inhabited = false;
    bool isotropic = false;     // stabilizer non-empty
    bool contractible = false;  // annihilator non-empty
    ElemSet stab, ann;
};
HModClass classify(const FiniteHeapOfModules& hm);

// Congruence classes of a non-empty Lambda-closed sub-heap N and the
// quotient heap of modules.
struct HModQuotient {
    std::vector<int> class_of;
    std::vector<std::vector<Elem>> classes;
    FiniteHeapOfModules quotient;
};
HModQuotient congruence_classes(const FiniteHeapOfModules& hm, const ElemSet& n);

// The cross product truss on M x T at basepoint e, with carrier index
// m * |T| + t (m-major). Requires both T and M non-empty.
struct CrossProductTruss {
    FiniteTruss truss;
    Elem basepoint;
    int m_order, t_order;
    Elem encode(Elem m, Elem t) const { return m * t_order + t; }
    Elem part_m(Elem x) const { return x / t_order; }
    Elem part_t(Elem x) const { return x % t_order; }
};
CrossProductTruss cross_product(const FiniteHeapOfModules& hm, Elem e);

bool is_hmodule_morphism(const Table1& f, const FiniteHeapOfModules& src,
                         const FiniteHeapOfModules& dst, std::string* witness = nullptr);

// All morphisms src -> dst: heap morphisms filtered by compatibility with
// Lambda. `budget` caps candidate evaluations.
std::vector<Table1> hmodule_morphisms(const FiniteHeapOfModules& src,
                                      const FiniteHeapOfModules& dst,
                                      long long budget = 10'000'000);

// The truss of T-group endomorphisms of G under pointwise bracket and
// composition (acting on G by evaluation).
struct TGroupEndoTruss {
    FiniteTruss truss;
    std::vector<Table1> endos;
    int index_of(const Table1& f) const;
};
TGroupEndoTruss tgroup_endo_truss(const FiniteTGroup& g);

// The truss E_T(G) of heap-of-modules endomorphisms of from_module(G).
// Asserts the crossed-product decomposition: f -> (f(0), F) is a truss
// isomorphism onto G x| T-Grp(G) at basepoint 0, table-for-table.
struct HModEndoTruss {
    FiniteTruss truss;
    std::vector<Table1> endos;
    int index_of(const Table1& f) const;
};
HModEndoTruss endo_truss_ET(const FiniteTGroup& g, long long budget = 10'000'000);

// Two independent verdicts: (a) E_T(M) and E_S(N) isomorphic as trusses,
// (b) a group isomorphism M -> N conjugating T-Grp(M) onto S-Grp(N)
// exists. Asserted equal; the common verdict is returned.
struct BaerKaplanskyResult {
    bool endo_trusses_isomorphic;
    bool intertwined_pair_exists;
};
BaerKaplanskyResult baer_kaplansky_check(const FiniteTGroup& m, const FiniteTGroup& n,
                                         long long budget = 10'000'000);

// Heap endomorphisms D with D(st) = [D(s)t, st, sD(t)]. The result is a
// sub-heap of E(T). For commutative T the derivations form a heap of
// T-modules via Lambda(t,D1,D2) = [D1, t.D1, t.D2], returned alongside.
struct DerivationHeap {
    std::vector<Table1> derivations;        // sorted value tables
    FiniteHeap heap;                        // pointwise bracket on them
    std::optional<FiniteHeapOfModules> hmodule;  // present when T commutative
};
DerivationHeap derivations(const FiniteTruss& t);

enum class EntropyVerdict { HypothesisNotSatisfied, Holds };
// If Lambda(tt',e,m) = Lambda(t't,e,m) for some e (checked for all e as
// well), asserts the interchange conclusion over all quadruples.
EntropyVerdict entropy_check(const FiniteHeapOfModules& hm, Elem t, Elem t2);

// Over a ring truss: affine iff inhabited, unit in Stab, absorber in Ann.
// When affine, reconstructs the module at the first basepoint and asserts
// from_module reproduces hm.
struct RingAffineClass {
    bool is_affine_module = false;
    std::optional<FiniteTModule> module;  // carrier with absorber basepoint 0
};
RingAffineClass ring_affine_classify(const FiniteHeapOfModules& hm);

}  // namespace finalg
