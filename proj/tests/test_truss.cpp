#include "doctest.h"
#include "finalg/truss.hpp"

#include <algorithm>

using namespace finalg;

namespace {

FiniteTruss truss_mod(int n) { return truss_from_ring(ring_mod(n)); }

// m*n = 2mn+m+n on Z/3; conjugate of Z/3 multiplication under m -> 2m+1.
FiniteTruss shifted_product_truss3() {
    FiniteHeap h = heap_from_group(cyclic_group(3));
    Table2 mul(9);
    for (Elem a = 0; a < 3; ++a)
        for (Elem b = 0; b < 3; ++b) mul[a * 3 + b] = (2 * a * b + a + b) % 3;
    return make_truss(std::move(h), std::move(mul));
}

FiniteTruss left_projection_truss(int n, const FiniteHeap& h) {
    Table2 mul(size_t(n) * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) mul[size_t(a) * n + b] = a;
    return make_truss(h, std::move(mul));
}

}  // namespace

TEST_CASE("T(Z/2): unit 1, absorber 0") {
    FiniteTruss t = truss_mod(2);
    CHECK(validate_truss(t).valid());
    CHECK(t.unit == 1);
    CHECK(t.absorber == 0);
}

TEST_CASE("2mn+m+n truss on Z/3 is valid; 0 is the unit, 1 the absorber") {
    FiniteTruss t = shifted_product_truss3();
    auto rep = validate_truss(t);
    CHECK(rep.valid());
    // 0 is not an absorber: 0*0=0 but 0*1=1
    CHECK(t.times(0, 0) == 0);
    CHECK(t.times(0, 1) == 1);
    CHECK(t.unit == 0);
    CHECK(t.absorber == 1);

    // conjugation oracle: phi(m) = 2m+1 carries ring multiplication to it
    FiniteTruss t3 = truss_mod(3);
    Table1 phi = {1, 0, 2};  // 2m+1 mod 3
    std::string w;
    CHECK(is_truss_morphism(phi, t3, t, &w));
}

TEST_CASE("left projection is a truss on any abelian heap") {
    FiniteHeap h4 = heap_from_group(cyclic_group(4));
    FiniteTruss t = left_projection_truss(4, h4);
    CHECK(validate_truss(t).valid());
    CHECK(!t.unit.has_value());
    CHECK(!t.absorber.has_value());
}

TEST_CASE("truss_from_ring examples") {
    FiniteTruss t4 = truss_mod(4);
    CHECK(t4.absorber == 0);
    CHECK(t4.unit == 1);

    // zero ring on Z/2
    FiniteRing zr;
    zr.add = cyclic_group(2);
    zr.mul = {0, 0, 0, 0};
    FiniteTruss tz = truss_from_ring(zr);
    CHECK(validate_truss(tz).valid());
    CHECK(tz.absorber == 0);
    for (Elem a = 0; a < 2; ++a)
        for (Elem b = 0; b < 2; ++b) CHECK(tz.times(a, b) == 0);
}

TEST_CASE("order-2 distributivity is automatic: valid trusses = associative tables") {
    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    int n_assoc = 0, n_valid = 0;
    for (unsigned code = 0; code < 16; ++code) {
        Table2 mul = {Elem(code & 1), Elem((code >> 1) & 1), Elem((code >> 2) & 1),
                      Elem((code >> 3) & 1)};
        bool assoc = true;
        for (Elem a = 0; a < 2 && assoc; ++a)
            for (Elem b = 0; b < 2 && assoc; ++b)
                for (Elem c = 0; c < 2 && assoc; ++c)
                    assoc = mul[mul[a * 2 + b] * 2 + c] == mul[a * 2 + mul[b * 2 + c]];
        FiniteTruss t;
        t.heap = h2;
        t.mul = mul;
        bool valid = validate_truss(t).valid();
        if (assoc) ++n_assoc;
        if (valid) ++n_valid;
        CHECK(assoc == valid);
    }
    CHECK(n_assoc == 8);
    CHECK(n_valid == 8);
}

TEST_CASE("endomorphism trusses via the all-functions oracle") {
    auto oracle_endos = [](const FiniteHeap& h) {
        std::vector<Table1> out;
        std::vector<Elem> f(h.order, 0);
        for (;;) {
            if (is_heap_morphism(f, h, h)) out.push_back(f);
            size_t i = 0;
            for (; i < f.size(); ++i) {
                if (++f[i] < h.order) break;
                f[i] = 0;
            }
            if (i == f.size()) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    FiniteHeap h2 = heap_from_group(cyclic_group(2));
    EndomorphismTruss e2 = endomorphism_truss(h2);
    CHECK(e2.truss.order() == 4);
    CHECK(e2.endos == oracle_endos(h2));
    CHECK(validate_truss(e2.truss).valid());
    CHECK(e2.truss.unit.has_value());
    // unit is the identity endomorphism
    CHECK(e2.endos[*e2.truss.unit] == Table1{0, 1});

    FiniteHeap h3 = heap_from_group(cyclic_group(3));
    EndomorphismTruss e3 = endomorphism_truss(h3);
    CHECK(e3.truss.order() == 9);
    CHECK(e3.endos == oracle_endos(h3));

    FiniteHeap h1 = heap_from_group(cyclic_group(1));
    CHECK(endomorphism_truss(h1).truss.order() == 1);

    CHECK_THROWS_AS(endomorphism_truss(h3, 5), ResourceError);
}

TEST_CASE("paragon tests") {
    FiniteTruss t2 = truss_mod(2);
    CHECK(is_paragon(t2, ElemSet::of(2, {0})));
    CHECK(is_paragon(t2, ElemSet::of(2, {1})));
    CHECK(!is_paragon(t2, ElemSet(2)));

    FiniteTruss t4 = truss_mod(4);
    CHECK(is_paragon(t4, ElemSet::of(4, {0, 2})));
    CHECK(is_paragon(t4, ElemSet::of(4, {1, 3})));
    std::string w;
    CHECK(!is_paragon(t4, ElemSet::of(4, {0, 1}), &w));
    CHECK(!w.empty());
}

TEST_CASE("ideal tests") {
    FiniteTruss t4 = truss_mod(4);
    CHECK(is_ideal(t4, ElemSet::of(4, {0, 2}), IdealSide::TwoSided));
    CHECK(is_ideal(t4, ElemSet::full(4), IdealSide::TwoSided));
    FiniteTruss t2 = truss_mod(2);
    CHECK(!is_ideal(t2, ElemSet::of(2, {1}), IdealSide::Left));  // 0*1 = 0 escapes
}

TEST_CASE("quotient by paragon") {
    FiniteTruss t4 = truss_mod(4);
    auto q = quotient_by_paragon(t4, ElemSet::of(4, {0, 2}));
    CHECK(q.quotient.order() == 2);
    FiniteTruss t2 = truss_mod(2);
    CHECK(q.quotient.same_tables(t2));

    auto whole = quotient_by_paragon(t4, ElemSet::full(4));
    CHECK(whole.quotient.order() == 1);

    // {1} is a paragon of T(Z/2); its congruence is discrete
    auto disc = quotient_by_paragon(t2, ElemSet::of(2, {1}));
    CHECK(disc.quotient.order() == 2);
}

TEST_CASE("preimages of truss morphisms are paragons (orders <= 3)") {
    std::vector<FiniteTruss> trusses = {truss_mod(2), truss_mod(3), shifted_product_truss3(),
                                        left_projection_truss(2, heap_from_group(cyclic_group(2))),
                                        star_truss()};
    for (const auto& src : trusses)
        for (const auto& dst : trusses)
            for (const Table1& f : truss_morphisms(src, dst)) {
                for (Elem e = 0; e < dst.order(); ++e) {
                    ElemSet pre(src.order());
                    for (Elem x = 0; x < src.order(); ++x)
                        if (f[x] == e) pre.insert(x);
                    if (pre.empty()) continue;  // e not in the image
                    std::string w;
                    CHECK(is_paragon(src, pre, &w));
                }
            }
}

TEST_CASE("subset classification flags are rederivable") {
    FiniteTruss t4 = truss_mod(4);
    SubsetFlag f = classify_subset(t4, ElemSet::of(4, {0, 2}));
    CHECK(f.subheap);
    CHECK(f.subtruss);
    CHECK(f.paragon);
    CHECK(f.two_sided_ideal);

    // the empty set is a sub-heap and sub-truss but not a paragon or ideal
    SubsetFlag e = classify_subset(t4, ElemSet(4));
    CHECK(e.subheap);
    CHECK(e.subtruss);
    CHECK(!e.paragon);
    CHECK(!e.two_sided_ideal);
}
