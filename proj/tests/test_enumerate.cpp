#include "doctest.h"
#include "finalg/enumerate.hpp"
#include "finalg/iso.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace finalg;

namespace {

FiniteTruss truss_mod(int n) { return truss_from_ring(ring_mod(n)); }

// Oracle: every labeled abelian heap table on {0..n-1} arises as x-y+z of
// a labeled abelian group with neutral 0. Groups are enumerated by filling
// the free cells (commutativity and the identity row fixed in advance) and
// filtering by the group axioms; every produced ternary table is then
// revalidated as a heap.
std::set<Table3> oracle_labeled_heaps(int n) {
    std::set<Table3> heaps;
    std::vector<std::pair<int, int>> cells;  // i <= j, i >= 1
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) cells.push_back({i, j});
    std::vector<Elem> fill(cells.size(), 0);
    for (;;) {
        Table2 add(size_t(n) * n);
        for (int x = 0; x < n; ++x) {
            add[size_t(0) * n + x] = x;
            add[size_t(x) * n + 0] = x;
        }
        for (size_t c = 0; c < cells.size(); ++c) {
            add[size_t(cells[c].first) * n + cells[c].second] = fill[c];
            add[size_t(cells[c].second) * n + cells[c].first] = fill[c];
        }
        try {
            FiniteAbelianGroup g = group_from_add_table(n, add);
            if (validate_group(g).valid()) {
                FiniteHeap h = heap_from_group(g);
                REQUIRE(validate_heap(h).valid());
                heaps.insert(h.ternary);
            }
        } catch (const StructuralError&) {
        }
        size_t i = 0;
        for (; i < fill.size(); ++i) {
            if (++fill[i] < n) break;
            fill[i] = 0;
        }
        if (i == fill.size()) break;
        if (fill.empty()) break;
    }
    if (n == 1) heaps.insert(Table3{0});
    return heaps;
}

int orbit_count(int n, const std::set<Table3>& tables, int arity) {
    std::vector<Table3> left(tables.begin(), tables.end());
    int orbits = 0;
    while (!left.empty()) {
        ++orbits;
        Table3 rep = left.front();
        Table1 sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = i;
        std::set<Table3> orbit;
        do {
            orbit.insert(relabel_table(n, arity, rep, sigma));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        std::vector<Table3> rest;
        for (auto& t : left)
            if (!orbit.count(t)) rest.push_back(t);
        left = std::move(rest);
    }
    return orbits;
}

}  // namespace

TEST_CASE("abelian heap counts match the structure theorem and the oracle") {
    std::vector<int> expected = {1, 1, 1, 1, 2, 1, 1, 1, 3};
    for (int n = 0; n <= 8; ++n)
        CHECK(enumerate_abelian_heaps(n).size() == size_t(expected[n]));

    // brute-force table filter for n <= 4, counted up to relabeling
    for (int n = 1; n <= 4; ++n) {
        std::set<Table3> labeled = oracle_labeled_heaps(n);
        CHECK(enumerate_abelian_heaps(n).size() == size_t(orbit_count(n, labeled, 3)));
    }

    // for n = 2 the direct scan over all 256 ternary tables agrees
    {
        std::set<Table3> direct;
        for (unsigned code = 0; code < 256; ++code) {
            FiniteHeap h;
            h.order = 2;
            h.ternary.resize(8);
            for (int i = 0; i < 8; ++i) h.ternary[i] = (code >> i) & 1;
            if (validate_heap(h).valid()) direct.insert(h.ternary);
        }
        CHECK(direct == oracle_labeled_heaps(2));
    }

    for (const FiniteHeap& h : enumerate_abelian_heaps(6)) CHECK(validate_heap(h).valid());
}

TEST_CASE("truss enumeration against the naive oracle") {
    // n = 2 labeled: exactly the 8 associative tables over the xor heap
    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    std::set<Table2> oracle;
    for (unsigned code = 0; code < 16; ++code) {
        FiniteTruss t;
        t.heap = h2;
        t.mul = {Elem(code & 1), Elem((code >> 1) & 1), Elem((code >> 2) & 1),
                 Elem((code >> 3) & 1)};
        if (validate_truss(t).valid()) oracle.insert(t.mul);
    }
    REQUIRE(oracle.size() == 8);
    std::set<Table2> produced;
    for (const FiniteTruss& t : enumerate_trusses(2, false)) produced.insert(t.mul);
    CHECK(produced == oracle);

    CHECK(enumerate_trusses(1, false).size() == 1);
    CHECK(enumerate_trusses(1, true).size() == 1);

    // up to isomorphism: quotient the 8 tables under the 2 relabelings
    {
        std::set<std::pair<Table3, Table2>> labeled;
        for (const FiniteTruss& t : enumerate_trusses(2, false))
            labeled.insert({t.heap.ternary, t.mul});
        int orbits = 0;
        std::set<std::pair<Table3, Table2>> left = labeled;
        while (!left.empty()) {
            ++orbits;
            auto rep = *left.begin();
            for (Table1 sigma : {Table1{0, 1}, Table1{1, 0}}) {
                auto img = std::make_pair(relabel_table(2, 3, rep.first, sigma),
                                          relabel_table(2, 2, rep.second, sigma));
                left.erase(img);
            }
        }
        CHECK(orbits == 5);
        CHECK(enumerate_trusses(2, true).size() == 5);
    }

    // n = 3: the naive 3^9 filter agrees with the backtracking search
    {
        FiniteHeap h3 = heap_from_group(cyclic_group(3));
        std::set<Table2> oracle3;
        Table2 mul(9, 0);
        for (;;) {
            FiniteTruss t;
            t.heap = h3;
            t.mul = mul;
            if (validate_truss(t).valid()) oracle3.insert(mul);
            int i = 0;
            for (; i < 9; ++i) {
                if (++mul[i] < 3) break;
                mul[i] = 0;
            }
            if (i == 9) break;
        }
        std::set<Table2> produced3;
        for (const FiniteTruss& t : enumerate_trusses(3, false)) produced3.insert(t.mul);
        CHECK(produced3 == oracle3);
    }
}

TEST_CASE("canonical forms are relabeling invariants") {
    std::mt19937 rng(20240817);
    auto random_perm = [&](int n) {
        Table1 sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = i;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        return sigma;
    };

    for (int n : {2, 3, 4, 6}) {
        for (const FiniteHeap& h : enumerate_abelian_heaps(n)) {
            CanonicalForm cf = canonical_form(h);
            for (int trial = 0; trial < 5; ++trial) {
                FiniteHeap r;
                r.order = n;
                r.ternary = relabel_table(n, 3, h.ternary, random_perm(n));
                CHECK(canonical_form(r) == cf);
            }
        }
    }
    for (const FiniteTruss& t : enumerate_trusses(3, true)) {
        CanonicalForm cf = canonical_form(t);
        for (int trial = 0; trial < 5; ++trial) {
            Table1 sigma = random_perm(3);
            FiniteTruss r;
            r.heap.order = 3;
            r.heap.ternary = relabel_table(3, 3, t.heap.ternary, sigma);
            r.mul = relabel_table(3, 2, t.mul, sigma);
            CHECK(canonical_form(r) == cf);
        }
    }
}

TEST_CASE("isomorphism testing") {
    FiniteTruss t4 = truss_mod(4);
    FiniteRing r22;
    r22.add = group_from_cycles({2, 2});
    r22.mul.resize(16);
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            // componentwise product in Z/2 x Z/2
            int a1 = a >> 1, a0 = a & 1, b1 = b >> 1, b0 = b & 1;
            r22.mul[a * 4 + b] = ((a1 & b1) << 1) | (a0 & b0);
        }
    FiniteTruss t22 = truss_from_ring(r22);
    CHECK(!are_isomorphic(t4, t22).isomorphic);

    // random relabeling is recovered
    FiniteTruss rel;
    Table1 sigma = {2, 0, 3, 1};
    rel.heap.order = 4;
    rel.heap.ternary = relabel_table(4, 3, t4.heap.ternary, sigma);
    rel.mul = relabel_table(4, 2, t4.mul, sigma);
    IsoResult res = are_isomorphic(t4, rel);
    REQUIRE(res.isomorphic);
    REQUIRE(res.witness.has_value());
    // the recovered witness transports the tables
    CHECK(relabel_table(4, 2, t4.mul, *res.witness) == rel.mul);
    CHECK(relabel_table(4, 3, t4.heap.ternary, *res.witness) == rel.heap.ternary);

    // the two projection trusses on 2 elements are not isomorphic: check
    // both candidate bijections directly
    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    FiniteTruss projl = make_truss(h2, {0, 0, 1, 1});
    FiniteTruss projr = make_truss(h2, {0, 1, 0, 1});
    bool any = false;
    for (Table1 cand : {Table1{0, 1}, Table1{1, 0}})
        if (relabel_table(2, 2, projl.mul, cand) == projr.mul) any = true;
    CHECK(!any);
    CHECK(!are_isomorphic(projl, projr).isomorphic);
}

TEST_CASE("module enumeration vs the odometer oracle") {
    FiniteTruss t2 = truss_mod(2);
    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    std::set<Table2> oracle;
    Table2 a(4, 0);
    for (;;) {
        FiniteTModule m;
        m.truss = t2;
        m.heap = h2;
        m.action = a;
        if (validate_module(m).valid()) oracle.insert(a);
        int i = 0;
        for (; i < 4; ++i) {
            if (++a[i] < 2) break;
            a[i] = 0;
        }
        if (i == 4) break;
    }
    std::set<Table2> produced;
    for (const FiniteTModule& m : enumerate_modules(t2, 2, false)) produced.insert(m.action);
    CHECK(produced == oracle);

    // empty and singleton carriers
    CHECK(enumerate_modules(t2, 0, false).size() == 1);
    CHECK(enumerate_modules(t2, 1, false).size() == 1);
}

TEST_CASE("hmodule enumeration vs the lambda-table oracle") {
    // over the star truss on a 2-element carrier: scan all 16 lambda tables
    FiniteTruss star = star_truss();
    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    std::set<Table3> oracle;
    Table3 lam(4, 0);
    for (;;) {
        FiniteHeapOfModules hm;
        hm.truss = star;
        hm.heap = h2;
        hm.lambda = lam;
        if (validate_hmodule(hm).valid()) oracle.insert(lam);
        int i = 0;
        for (; i < 4; ++i) {
            if (++lam[i] < 2) break;
            lam[i] = 0;
        }
        if (i == 4) break;
    }
    // exactly the two trivial actions
    REQUIRE(oracle.size() == 2);
    std::set<Table3> produced;
    for (const FiniteHeapOfModules& hm : enumerate_hmodules(star, 2, false))
        produced.insert(hm.lambda);
    CHECK(produced == oracle);
    // both projections are present and distinct
    CHECK(produced.count(Table3{0, 0, 1, 1}) == 1);
    CHECK(produced.count(Table3{0, 1, 0, 1}) == 1);

    CHECK(enumerate_hmodules(truss_mod(2), 1, false).size() == 1);
    CHECK(enumerate_hmodules(truss_mod(2), 0, false).size() == 1);

    // the regular heap of modules appears over T(Z/2) with carrier 2
    FiniteHeapOfModules reg = from_module(regular_module(truss_mod(2)));
    bool found = false;
    for (const FiniteHeapOfModules& hm : enumerate_hmodules(truss_mod(2), 2, false))
        if (hm.lambda == reg.lambda && hm.heap == reg.heap) found = true;
    CHECK(found);
}

TEST_CASE("corpus generation is deterministic across jobs") {
    CorpusLimits small;
    small.heap_max = 4;
    small.truss_max = 2;
    small.module_t_max = 2;
    small.module_m_max = 2;
    small.hmodule_t_max = 2;
    small.hmodule_m_max = 2;
    Corpus c1 = corpus_generate(small, 1);
    Corpus c4 = corpus_generate(small, 4);
    auto names = [](const Corpus& c) {
        std::vector<std::string> out;
        for (auto& l : c.heaps) out.push_back(l.name);
        for (auto& l : c.trusses) out.push_back(l.name);
        for (auto& l : c.modules) out.push_back(l.name);
        for (auto& l : c.hmodules) out.push_back(l.name);
        return out;
    };
    CHECK(names(c1) == names(c4));
    CHECK(c1.heaps.size() == 6);    // orders 0..4: 1+1+1+1+2
    CHECK(c1.trusses.size() == 6);  // order 1: 1, order 2: 5
}
