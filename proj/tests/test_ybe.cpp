#include "doctest.h"
#include "finalg/ybe.hpp"

using namespace finalg;

namespace {

FiniteTruss truss_mod(int n) { return truss_from_ring(ring_mod(n)); }
FiniteHeapOfModules regular_hm(int n) { return from_module(regular_module(truss_mod(n))); }

}  // namespace

TEST_CASE("classification of small tables") {
    // left projection: spindle and entropic, no division
    BinaryStructure lp = classify_binary({0, 0, 1, 1}, 2);
    CHECK(lp.flags.shelf);
    CHECK(lp.flags.spindle);
    CHECK(lp.flags.entropic);
    CHECK(!lp.flags.rack);
    CHECK(!lp.flags.quandle);
    CHECK(!lp.division.has_value());

    // dihedral table x*y = 2y-x on Z/3: entropic quandle
    Table2 dihedral(9);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) dihedral[x * 3 + y] = ((2 * y - x) % 3 + 3) % 3;
    BinaryStructure dq = classify_binary(dihedral, 3);
    CHECK(dq.flags.quandle);
    CHECK(dq.flags.entropic);
    REQUIRE(dq.division.has_value());

    // right projection: quandle with x \ y = y
    BinaryStructure rp = classify_binary({0, 1, 0, 1}, 2);
    CHECK(rp.flags.quandle);
    CHECK(rp.flags.entropic);
    REQUIRE(rp.division.has_value());
    for (Elem x = 0; x < 2; ++x)
        for (Elem y = 0; y < 2; ++y) CHECK((*rp.division)[x * 2 + y] == y);

    // a non-shelf witness
    Table2 bad = {1, 0, 0, 0};  // x*y = !(x|y)
    BinaryStructure nb = classify_binary(bad, 2);
    CHECK(!nb.flags.shelf);
    CHECK(!nb.shelf_witness.empty());
}

TEST_CASE("spindles from heaps of modules") {
    FiniteHeapOfModules hm2 = regular_hm(2);
    BinaryStructure u1 = spindle_from_hmodule(hm2, 1);
    CHECK(u1.op == Table2{0, 1, 0, 1});  // x*y = y
    BinaryStructure u0 = spindle_from_hmodule(hm2, 0);
    CHECK(u0.op == Table2{0, 0, 1, 1});  // x*y = x

    // over T(Z/3) with u = 2: x*y = 2y-x, the dihedral quandle
    FiniteHeapOfModules hm3 = regular_hm(3);
    BinaryStructure d = spindle_from_hmodule(hm3, 2);
    for (Elem m = 0; m < 3; ++m)
        for (Elem n = 0; n < 3; ++n) CHECK(d.at(m, n) == ((2 * n - m) % 3 + 3) % 3);
    CHECK(d.flags.quandle);
}

TEST_CASE("ybe maps") {
    FiniteHeapOfModules hm2 = regular_hm(2);
    YbePairMap swap = ybe_map(hm2, 1);  // r(m,n) = (n,m)
    for (Elem m = 0; m < 2; ++m)
        for (Elem n = 0; n < 2; ++n) {
            CHECK(swap.first(m, n) == n);
            CHECK(swap.second(m, n) == m);
        }
    CHECK(check_ybe(swap));

    YbePairMap proj = ybe_map(hm2, 0);  // r(m,n) = (m,m)
    for (Elem m = 0; m < 2; ++m)
        for (Elem n = 0; n < 2; ++n) {
            CHECK(proj.first(m, n) == m);
            CHECK(proj.second(m, n) == m);
        }
    CHECK(check_ybe(proj));

    // dihedral case over Z/3: all 27 triples
    CHECK(check_ybe(ybe_map(regular_hm(3), 2)));

    // the pair map of a non-shelf table fails with a witness
    Table2 nonshelf = {1, 0, 0, 0};  // x*y = !(x|y), not self-distributive
    REQUIRE(!classify_binary(nonshelf, 2).flags.shelf);
    YbePairMap bad;
    bad.order = 2;
    bad.r1 = nonshelf;
    bad.r2 = {0, 0, 1, 1};  // second component x
    std::string w;
    CHECK(!check_ybe(bad, &w));
    CHECK(!w.empty());
}

TEST_CASE("quandles from units") {
    // u = 2 with companion ubar = 2 over T(Z/3) (2*2 = 1)
    QuandleResult q = quandle_from_unit(regular_hm(3), 2, 2);
    CHECK(q.quandle.flags.quandle);
    CHECK(q.quandle.flags.entropic);
    CHECK(q.solution.nondegenerate);
    REQUIRE(q.solution.inverse.has_value());

    // u = ubar = 1: the swap, its own inverse
    QuandleResult s = quandle_from_unit(regular_hm(2), 1, 1);
    CHECK(s.solution.r1 == s.solution.inverse->first);
    CHECK(s.solution.r2 == s.solution.inverse->second);

    // u = 0 over T(Z/2): no companion exists
    CHECK_THROWS_AS(quandle_from_unit(regular_hm(2), 0, 0), MathError);
    CHECK_THROWS_AS(quandle_from_unit(regular_hm(2), 0, 1), MathError);
}

TEST_CASE("entropic pairs") {
    FiniteHeapOfModules hm3 = regular_hm(3);
    for (Elem u = 0; u < 3; ++u)
        for (Elem v = 0; v < 3; ++v)
            CHECK(entropic_pair_check(hm3, u, v) == PairVerdict::Holds);

    // corrupting the table turns the u = v case into a contract violation
    FiniteHeapOfModules bad = hm3;
    bad.lambda[(size_t(2) * 3 + 0) * 3 + 1] = (bad.lam(2, 0, 1) + 1) % 3;
    bool violated = false;
    try {
        for (Elem u = 0; u < 3 && !violated; ++u)
            (void)entropic_pair_check(bad, u, u);
    } catch (const ContractViolation&) {
        violated = true;
    }
    CHECK(violated);
}

TEST_CASE("affine spindles") {
    FiniteAbelianGroup z3 = cyclic_group(3);

    // f = multiplication by 2: the dihedral quandle
    Table1 f2 = {0, 2, 1};
    BinaryStructure d = affine_spindle(z3, f2);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) CHECK(d.at(x, y) == ((2 * y - x) % 3 + 3) % 3);

    // f = 0 and f = id: the two projections
    Table1 f0 = {0, 0, 0}, fid = {0, 1, 2};
    BinaryStructure p0 = affine_spindle(z3, f0);
    BinaryStructure pid = affine_spindle(z3, fid);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) {
            CHECK(p0.at(x, y) == x);
            CHECK(pid.at(x, y) == y);
        }

    // non-additive map rejected
    CHECK_THROWS_AS(affine_spindle(z3, Table1{1, 1, 1}), MathError);

    // agreement with the evaluation heap of modules over E(H):
    // x *_f y = [f(y), f(x), x] = Lambda(f, x, y)
    FiniteHeap h3 = heap_from_group(z3);
    EndomorphismTruss eh = endomorphism_truss(h3);
    FiniteTModule ev;
    ev.truss = eh.truss;
    ev.heap = h3;
    ev.action.resize(size_t(eh.truss.order()) * 3);
    for (int i = 0; i < eh.truss.order(); ++i)
        for (Elem x = 0; x < 3; ++x) ev.action[size_t(i) * 3 + x] = eh.endos[i][x];
    FiniteHeapOfModules evhm = from_module(ev);
    for (const Table1& f : group_homs(z3, z3)) {
        int u = eh.index_of(f);
        REQUIRE(u >= 0);
        CHECK(affine_spindle(z3, f).op == spindle_from_hmodule(evhm, u).op);
    }
}

TEST_CASE("splittings gallery") {
    // Q = Z/2 + Z/2, pi = second projection: two sections
    ShortExactSequence s;
    s.modulus = 2;
    s.p = cyclic_group(2);
    s.q = group_from_cycles({2, 2});
    s.r = cyclic_group(2);
    s.iota = {0, 2};  // x -> (x,0)
    s.pi = {0, 1, 0, 1};  // (a,b) -> b
    SectionGallery g = splittings_gallery(s);
    CHECK(g.maps.size() == 2);
    REQUIRE(g.hmodule.has_value());
    CHECK(validate_hmodule(*g.hmodule).valid());
    // with u = 1 (the unit mod 2) the spindle is a quandle
    BinaryStructure b = spindle_from_hmodule(*g.hmodule, 1);
    CHECK(b.flags.quandle);

    // Q = Z/4 over Z/2: no additive section
    ShortExactSequence ns;
    ns.modulus = 2;
    ns.p = cyclic_group(2);
    ns.q = cyclic_group(4);
    ns.r = cyclic_group(2);
    ns.iota = {0, 2};
    ns.pi = {0, 1, 0, 1};
    // exponent of Z/4 is 4, not 2: the modulus must be 4 for validity
    CHECK_THROWS_AS(splittings_gallery(ns), MathError);
    ns.modulus = 4;
    SectionGallery ng = splittings_gallery(ns);
    CHECK(ng.maps.empty());
    CHECK(!ng.hmodule.has_value());

    // split sequence with P = 0: a single section
    ShortExactSequence tr;
    tr.modulus = 2;
    tr.p = cyclic_group(1);
    tr.q = cyclic_group(2);
    tr.r = cyclic_group(2);
    tr.iota = {0};
    tr.pi = {0, 1};
    CHECK(splittings_gallery(tr).maps.size() == 1);
}

TEST_CASE("retractions gallery") {
    // mirror of the split example: retractions of iota : P -> Q
    ShortExactSequence s;
    s.modulus = 2;
    s.p = cyclic_group(2);
    s.q = group_from_cycles({2, 2});
    s.r = cyclic_group(2);
    s.iota = {0, 2};
    s.pi = {0, 1, 0, 1};
    SectionGallery g = retractions_gallery(s);
    CHECK(g.maps.size() == 2);
    REQUIRE(g.hmodule.has_value());
    CHECK(validate_hmodule(*g.hmodule).valid());

    // identity sequence: exactly one retraction
    ShortExactSequence idseq;
    idseq.modulus = 2;
    idseq.p = cyclic_group(2);
    idseq.q = cyclic_group(2);
    idseq.r = cyclic_group(1);
    idseq.iota = {0, 1};
    idseq.pi = {0, 0};
    CHECK(retractions_gallery(idseq).maps.size() == 1);

    // non-split: no retraction of Z/2 -> Z/4
    ShortExactSequence ns;
    ns.modulus = 4;
    ns.p = cyclic_group(2);
    ns.q = cyclic_group(4);
    ns.r = cyclic_group(2);
    ns.iota = {0, 2};
    ns.pi = {0, 1, 0, 1};
    CHECK(retractions_gallery(ns).maps.empty());
}

TEST_CASE("ybe text export") {
    YbePairMap swap = ybe_map(regular_hm(2), 1);
    std::string text = export_ybe_text(swap);
    CHECK(text == "order 2 nondegenerate false\n"
                  "0 0 -> 0 0\n"
                  "0 1 -> 1 0\n"
                  "1 0 -> 0 1\n"
                  "1 1 -> 1 1\n");
}
