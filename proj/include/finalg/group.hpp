/* Finite abelian groups as explicit Cayley tables. */

#pragma once

#include "finalg/common.hpp"

namespace finalg {

struct FiniteAbelianGroup {
    int order = 0;
    Table2 add;   // order*order
    Elem zero = 0;
    Table1 neg;   // order entries

    Elem at(Elem a, Elem b) const { return add[a * order + b]; }
    Elem sub(Elem a, Elem b) const { return add[a * order + neg[b]]; }
    // r-fold sum of x; r may be any integer.
    Elem times(long long r, Elem x) const;
};

// Builds the table structure from `add` alone; zero and neg are derived.
// Throws StructuralError on malformed tables or if no neutral element or
// some inverse is missing.
FiniteAbelianGroup group_from_add_table(int order, Table2 add);

// Direct product of cyclic groups Z/m1 x ... x Z/mk (mixed-radix labels).
// An empty list gives the trivial group; any modulus must be >= 1.
FiniteAbelianGroup cyclic_group(int n);
FiniteAbelianGroup group_from_cycles(const std::vector<int>& moduli);

ValidationReport validate_group(const FiniteAbelianGroup& g);

// Additive order of x (smallest r >= 1 with r*x = 0); order 0 group has none.
int element_order(const FiniteAbelianGroup& g, Elem x);

bool is_group_hom(const Table1& f, const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst);

// All additive homomorphisms src -> dst, deterministic order.
// Backtracks over generator images, then verifies additivity in full.
std::vector<Table1> group_homs(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst);

// Bijective homomorphisms only.
std::vector<Table1> group_isos(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst);

// Is S (subset of g) a subgroup?
bool is_subgroup(const FiniteAbelianGroup& g, const ElemSet& s);

}  // namespace finalg
