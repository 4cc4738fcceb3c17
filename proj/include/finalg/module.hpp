/* Modules over a finite truss and T-groups: induced actions, stabilizers,
 * annihilators, absorbers and the absorber <-> T-group correspondence. */

#pragma once

#include "finalg/truss.hpp"

namespace finalg {

struct FiniteTModule {
    FiniteTruss truss;
    FiniteHeap heap;   // carrier M
    Table2 action;     // |T| x |M|

    Elem act(Elem t, Elem m) const { return action[size_t(t) * heap.order + m]; }
    bool same_tables(const FiniteTModule& o) const {
        return truss.same_tables(o.truss) && heap == o.heap && action == o.action;
    }
};

struct FiniteTGroup {
    FiniteAbelianGroup group;
    FiniteTruss truss;
    Table2 action;     // |T| x |G|

    Elem act(Elem t, Elem g) const { return action[size_t(t) * group.order + g]; }
};

ValidationReport validate_module(const FiniteTModule& m);
FiniteTModule make_module(FiniteTruss t, FiniteHeap carrier, Table2 action);

// T acting on itself by multiplication.
FiniteTModule regular_module(const FiniteTruss& t);

// The terminal module on a single point.
FiniteTModule star_module(const FiniteTruss& t);

// t |>_e m = [t.m, t.e, e]; e becomes an absorber.
FiniteTModule induced_action(const FiniteTModule& m, Elem e);

// Exact stabilizer {u : u.m = m for all m}; all of T when the carrier is
// empty. When non-empty the result is checked to be a paragon and a
// sub-truss (theorem).
ElemSet stabilizer(const FiniteTModule& m);

// Exact annihilator {z : z.m = e for all m}; requires a non-empty carrier.
// When non-empty, checked to be a paragon and right ideal, two-sided when
// e is an absorber.
ElemSet annihilator(const FiniteTModule& m, Elem e);

// Exact set of absorbers; also asserts that e is an absorber iff the
// e-induced action coincides with the original one.
ElemSet absorbers(const FiniteTModule& m);

ValidationReport validate_tgroup(const FiniteTGroup& g);
FiniteTGroup make_tgroup(FiniteAbelianGroup g, FiniteTruss t, Table2 action);

// Z/n over T(Z/n) by multiplication, and friends.
FiniteTGroup regular_tgroup_mod(int n);

// T-group -> module whose carrier heap is H(G); zero becomes an absorber.
FiniteTModule tgroup_to_module(const FiniteTGroup& g);

// Module with designated absorber -> T-group on the retract. Throws
// MathError when `absorber` is not an absorber of m.
FiniteTGroup module_to_tgroup(const FiniteTModule& m, Elem absorber);

// Lemma-level dual route check: S is a coset of a submodule iff S is a
// non-empty sub-heap closed under all induced actions at its own points.
// Both sides computed independently and asserted equal.
bool coset_induced_submodule_test(const FiniteTGroup& m, const ElemSet& s);

bool is_module_morphism(const Table1& f, const FiniteTModule& src, const FiniteTModule& dst,
                        std::string* witness = nullptr);
std::vector<Table1> module_morphisms(const FiniteTModule& src, const FiniteTModule& dst);

bool is_tgroup_morphism(const Table1& f, const FiniteTGroup& src, const FiniteTGroup& dst);
std::vector<Table1> tgroup_morphisms(const FiniteTGroup& src, const FiniteTGroup& dst);

}  // namespace finalg
