/* T-affine spaces: a carrier with a free and transitive action of a
 * T-group, the equivalence with heaps of modules in both directions, and
 * the classical ternary affine-module axioms over a ring. */

#pragma once

#include "finalg/hmodule.hpp"

namespace finalg {

struct FiniteTAffineSpace {
    int carrier = 0;        // points 0..carrier-1
    FiniteTGroup group;
    Table2 rho;             // |G| x carrier; row g is a permutation

    Elem apply(Elem g, Elem a) const { return rho[size_t(g) * carrier + a]; }
};

// Permutation rows, action homomorphism rho(g+h) = rho(g) o rho(h),
// injectivity, and bijectivity of the shear map (g,a) -> (rho(g)(a), a).
ValidationReport validate_affine(const FiniteTAffineSpace& a);
FiniteTAffineSpace make_affine(int carrier, FiniteTGroup g, Table2 rho);

// The empty affine space over T: empty carrier, trivial group.
FiniteTAffineSpace empty_affine(const FiniteTruss& t);

// Torsor of a T-group on itself by translation.
FiniteTAffineSpace torsor(const FiniteTGroup& g);

// Affine space -> heap of modules: [a,b,c] = rho(u)(c) for the unique u
// moving b to a; Lambda(t,a,b) = rho(t.u)(a) for the unique u moving a
// to b.
FiniteHeapOfModules phi(const FiniteTAffineSpace& a);

// Translations of a heap of modules as a T-group:
// t . tau_a^b = tau_a^{Lambda(t,a,b)}; representative independence is
// asserted.
struct TransTGroup {
    FiniteTGroup tgroup;
    std::vector<Table1> perms;  // element index -> permutation of M
    Table2 tau_index;           // |M| x |M| -> element index
};
TransTGroup trans_tgroup(const FiniteHeapOfModules& hm);

// Heap of modules -> affine space on the same carrier, acted on by its
// translation T-group.
FiniteTAffineSpace psi(const FiniteHeapOfModules& hm);

struct AffineMorphismPair {
    Table1 carrier_map;  // F : A -> B
    Table1 group_map;    // f : G -> H
};

// Equivariance F(rho_A(g)(a)) = rho_B(f(g))(F(a)) plus f being a T-group
// morphism.
bool validate_affine_morphism(const AffineMorphismPair& p, const FiniteTAffineSpace& a,
                              const FiniteTAffineSpace& b, std::string* witness = nullptr);

// Checks the equivalence roundtrips: phi(psi(hm)) equals hm table for
// table; psi(phi(as)) is isomorphic to as via the counit sending tau_a^b
// to the unique g with rho(g)(a) = b. Throws ContractViolation on any
// failure; returns the counit for inspection.
void check_phi_psi_identity(const FiniteHeapOfModules& hm);
Table1 check_psi_phi_counit(const FiniteTAffineSpace& as);

// Classical affine module axioms over a unital ring (two ternary tables
// on a carrier): P1-P3 for the bracket and V0-V4 for Lambda, V2 using the
// ring addition. Also asserts the equivalence with "valid heap of modules
// + unit stabilizes + zero annihilates".
ValidationReport affine_rmodule_axioms(const FiniteRing& r, int order, const Table3& bracket,
                                       const Table3& lambda);

}  // namespace finalg
