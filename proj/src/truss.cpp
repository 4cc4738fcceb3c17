#include "finalg/truss.hpp"

#include <algorithm>

namespace finalg {

namespace {

std::optional<Elem> find_unit(int n, const Table2& mul) {
    for (Elem u = 0; u < n; ++u) {
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a)
            ok = mul[size_t(u) * n + a] == a && mul[size_t(a) * n + u] == a;
        if (ok) return u;
    }
    return std::nullopt;
}

std::optional<Elem> find_absorber(int n, const Table2& mul) {
    for (Elem z = 0; z < n; ++z) {
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a)
            ok = mul[size_t(z) * n + a] == z && mul[size_t(a) * n + z] == z;
        if (ok) return z;
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_ring(FiniteRing& r) {
    ValidationReport rep = validate_group(r.add);
    if (!rep.structural_ok) return rep;
    const int n = r.add.order;
    if (r.mul.size() != size_t(n) * n) {
        rep.structural_ok = false;
        rep.structural_message = "ring: mul table size mismatch";
        return rep;
    }
    for (Elem v : r.mul)
        if (!in_range(v, n)) {
            rep.structural_ok = false;
            rep.structural_message = cat("ring: mul entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (r.times(r.times(a, b), c) != r.times(a, r.times(b, c))) {
                    pass = false;
                    w = cat("(", a, b, ")", c, " != ", a, "(", b, c, ")");
                }
    rep.add("mul-associativity", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (r.times(a, r.add.at(b, c)) != r.add.at(r.times(a, b), r.times(a, c))) {
                    pass = false;
                    w = cat(a, "*(", b, "+", c, ") != ", a, "*", b, " + ", a, "*", c);
                }
    rep.add("left-distributivity", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (r.times(r.add.at(a, b), c) != r.add.at(r.times(a, c), r.times(b, c))) {
                    pass = false;
                    w = cat("(", a, "+", b, ")*", c, " != ", a, "*", c, " + ", b, "*", c);
                }
    rep.add("right-distributivity", pass, w);

    r.unit = find_unit(n, r.mul);
    rep.unit = r.unit;
    return rep;
}

FiniteRing ring_mod(int n) {
    FiniteRing r;
    r.add = cyclic_group(n);
    r.mul.resize(size_t(n) * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) r.mul[size_t(a) * n + b] = (a * b) % n;
    ValidationReport rep = validate_ring(r);
    if (!rep.valid()) throw ContractViolation("ring_mod: invalid");
    return r;
}

FiniteRing ring_from_tables(int order, Table2 add, Table2 mul) {
    FiniteRing r;
    r.add = group_from_add_table(order, std::move(add));
    r.mul = std::move(mul);
    check_table(r.mul, size_t(order) * order, order, "ring mul table");
    ValidationReport rep = validate_ring(r);
    if (!rep.valid()) throw MathError(cat("ring_from_tables: invalid ring\n", rep.to_string()));
    return r;
}

static ValidationReport validate_truss_impl(const FiniteTruss& t, std::optional<Elem>* unit_out,
                                            std::optional<Elem>* absorber_out) {
    ValidationReport rep;
    const int n = t.heap.order;
    {
        ValidationReport hrep = validate_heap(t.heap);
        if (!hrep.structural_ok) return hrep;
        for (auto& a : hrep.axioms) rep.add("heap-" + a.axiom, a.pass, a.witness);
    }
    if (t.mul.size() != size_t(n) * n) {
        rep.structural_ok = false;
        rep.structural_message = "truss: mul table size mismatch";
        return rep;
    }
    for (Elem v : t.mul)
        if (!in_range(v, n)) {
            rep.structural_ok = false;
            rep.structural_message = cat("truss: mul entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (t.times(t.times(a, b), c) != t.times(a, t.times(b, c))) {
                    pass = false;
                    w = cat("(", a, "*", b, ")*", c, " = ", t.times(t.times(a, b), c), " but ", a,
                            "*(", b, "*", c, ") = ", t.times(a, t.times(b, c)));
                }
    rep.add("mul-associativity", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                for (Elem d = 0; d < n && pass; ++d) {
                    Elem lhs = t.times(a, t.bracket(b, c, d));
                    Elem rhs = t.bracket(t.times(a, b), t.times(a, c), t.times(a, d));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat(a, "*[", b, ",", c, ",", d, "] = ", lhs, " but [", a, "*", b, ",",
                                a, "*", c, ",", a, "*", d, "] = ", rhs);
                    }
                }
    rep.add("left-distributivity", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                for (Elem d = 0; d < n && pass; ++d) {
                    Elem lhs = t.times(t.bracket(b, c, d), a);
                    Elem rhs = t.bracket(t.times(b, a), t.times(c, a), t.times(d, a));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat("[", b, ",", c, ",", d, "]*", a, " = ", lhs, " but [", b, "*", a,
                                ",", c, "*", a, ",", d, "*", a, "] = ", rhs);
                    }
                }
    rep.add("right-distributivity", pass, w);

    auto u = find_unit(n, t.mul);
    auto z = find_absorber(n, t.mul);
    rep.unit = u;
    rep.absorber = z;
    if (unit_out) *unit_out = u;
    if (absorber_out) *absorber_out = z;
    return rep;
}

ValidationReport validate_truss(FiniteTruss& t) {
    return validate_truss_impl(t, &t.unit, &t.absorber);
}

ValidationReport validate_truss(const FiniteTruss& t) {
    return validate_truss_impl(t, nullptr, nullptr);
}

FiniteTruss make_truss(FiniteHeap heap, Table2 mul) {
    FiniteTruss t;
    t.heap = std::move(heap);
    t.mul = std::move(mul);
    ValidationReport rep = validate_truss(t);
    if (!rep.structural_ok) throw StructuralError(rep.structural_message);
    if (!rep.valid()) throw MathError(cat("make_truss: axioms fail\n", rep.to_string()));
    return t;
}

FiniteTruss truss_from_ring(const FiniteRing& r) {
    FiniteRing copy = r;
    ValidationReport rrep = validate_ring(copy);
    if (!rrep.valid()) throw MathError(cat("truss_from_ring: invalid ring\n", rrep.to_string()));
    FiniteTruss t = make_truss(heap_from_group(r.add), r.mul);
    if (!t.absorber || *t.absorber != r.add.zero)
        throw ContractViolation("truss_from_ring: ring zero is not the absorber");
    return t;
}

FiniteTruss star_truss() {
    FiniteHeap h;
    h.order = 1;
    h.ternary = {0};
    return make_truss(std::move(h), Table2{0});
}

int EndomorphismTruss::index_of(const Table1& f) const {
    auto it = std::lower_bound(endos.begin(), endos.end(), f);
    if (it == endos.end() || *it != f) return -1;
    return int(it - endos.begin());
}

EndomorphismTruss endomorphism_truss(const FiniteHeap& h, int budget) {
    if (h.order < 1) throw MathError("endomorphism_truss: carrier must be non-empty");
    EndomorphismTruss et;
    et.endos = heap_morphisms(h, h);
    std::sort(et.endos.begin(), et.endos.end());
    const int m = int(et.endos.size());
    if (m > budget)
        throw ResourceError(cat("endomorphism_truss: ", m, " endomorphisms exceed budget ",
                                budget));

    FiniteHeap eh;
    eh.order = m;
    eh.ternary.resize(size_t(m) * m * m);
    Table1 tmp(h.order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (Elem x = 0; x < h.order; ++x)
                    tmp[x] = h.at(et.endos[i][x], et.endos[j][x], et.endos[k][x]);
                int idx = et.index_of(tmp);
                if (idx < 0)
                    throw ContractViolation("endomorphism_truss: pointwise bracket escaped");
                eh.ternary[(size_t(i) * m + j) * m + k] = idx;
            }

    Table2 mul(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (Elem x = 0; x < h.order; ++x) tmp[x] = et.endos[i][et.endos[j][x]];
            int idx = et.index_of(tmp);
            if (idx < 0) throw ContractViolation("endomorphism_truss: composition escaped");
            mul[size_t(i) * m + j] = idx;
        }
    et.truss = make_truss(std::move(eh), std::move(mul));
    return et;
}

bool is_subtruss(const FiniteTruss& t, const ElemSet& s, std::string* witness) {
    if (!is_subheap(t.heap, s, witness)) return false;
    for (Elem a : s.members())
        for (Elem b : s.members())
            if (!s.contains(t.times(a, b))) {
                if (witness) *witness = cat(a, "*", b, " = ", t.times(a, b), " escapes the subset");
                return false;
            }
    return true;
}

bool is_paragon(const FiniteTruss& t, const ElemSet& p, std::string* witness) {
    if (p.empty()) {
        if (witness) *witness = "paragon must be non-empty";
        return false;
    }
    if (!is_subheap(t.heap, p, witness)) return false;
    const auto mem = p.members();
    for (Elem x : mem)
        for (Elem q : mem)
            for (Elem s = 0; s < t.order(); ++s) {
                Elem l = t.bracket(t.times(s, x), t.times(s, q), q);
                if (!p.contains(l)) {
                    if (witness)
                        *witness = cat("[", s, "*", x, ",", s, "*", q, ",", q, "] = ", l,
                                       " escapes");
                    return false;
                }
                Elem r = t.bracket(t.times(x, s), t.times(q, s), q);
                if (!p.contains(r)) {
                    if (witness)
                        *witness = cat("[", x, "*", s, ",", q, "*", s, ",", q, "] = ", r,
                                       " escapes");
                    return false;
                }
            }
    return true;
}

bool is_ideal(const FiniteTruss& t, const ElemSet& i, IdealSide side, std::string* witness) {
    if (i.empty()) {
        if (witness) *witness = "ideal must be non-empty";
        return false;
    }
    if (!is_subheap(t.heap, i, witness)) return false;
    for (Elem x : i.members())
        for (Elem s = 0; s < t.order(); ++s) {
            if (side != IdealSide::Right && !i.contains(t.times(s, x))) {
                if (witness) *witness = cat(s, "*", x, " = ", t.times(s, x), " escapes");
                return false;
            }
            if (side != IdealSide::Left && !i.contains(t.times(x, s))) {
                if (witness) *witness = cat(x, "*", s, " = ", t.times(x, s), " escapes");
                return false;
            }
        }
    return true;
}

SubsetFlag classify_subset(const FiniteTruss& t, const ElemSet& s) {
    SubsetFlag f;
    f.subset = s;
    f.subheap = s.empty() || is_subheap(t.heap, s);
    f.subtruss = s.empty() || is_subtruss(t, s);
    f.paragon = is_paragon(t, s);
    f.left_ideal = is_ideal(t, s, IdealSide::Left);
    f.right_ideal = is_ideal(t, s, IdealSide::Right);
    f.two_sided_ideal = is_ideal(t, s, IdealSide::TwoSided);
    return f;
}

TrussQuotient quotient_by_paragon(const FiniteTruss& t, const ElemSet& p) {
    std::string w;
    if (!is_paragon(t, p, &w)) throw MathError(cat("quotient_by_paragon: not a paragon: ", w));
    HeapQuotient hq = subheap_relation(t.heap, p);
    TrussQuotient q;
    q.class_of = hq.class_of;
    q.classes = hq.classes;
    const int m = int(hq.classes.size());
    Table2 mul(size_t(m) * m, -1);
    for (Elem a = 0; a < t.order(); ++a)
        for (Elem b = 0; b < t.order(); ++b) {
            size_t idx = size_t(q.class_of[a]) * m + q.class_of[b];
            int val = q.class_of[t.times(a, b)];
            if (mul[idx] < 0)
                mul[idx] = val;
            else if (mul[idx] != val)
                throw ContractViolation(
                    cat("quotient_by_paragon: product ill-defined at classes of (", a, ",", b,
                        ")"));
        }
    q.quotient = make_truss(hq.quotient, std::move(mul));
    return q;
}

bool is_truss_morphism(const Table1& f, const FiniteTruss& src, const FiniteTruss& dst,
                       std::string* witness) {
    if (!is_heap_morphism(f, src.heap, dst.heap, witness)) return false;
    for (Elem a = 0; a < src.order(); ++a)
        for (Elem b = 0; b < src.order(); ++b)
            if (f[src.times(a, b)] != dst.times(f[a], f[b])) {
                if (witness)
                    *witness = cat("f(", a, "*", b, ") = ", f[src.times(a, b)], " but f(", a,
                                   ")*f(", b, ") = ", dst.times(f[a], f[b]));
                return false;
            }
    return true;
}

std::vector<Table1> truss_morphisms(const FiniteTruss& src, const FiniteTruss& dst) {
    std::vector<Table1> out;
    for (auto& f : heap_morphisms(src.heap, dst.heap))
        if (is_truss_morphism(f, src, dst)) out.push_back(f);
    return out;
}

bool is_commutative(const FiniteTruss& t) {
    for (Elem a = 0; a < t.order(); ++a)
        for (Elem b = 0; b < t.order(); ++b)
            if (t.times(a, b) != t.times(b, a)) return false;
    return true;
}

}  // namespace finalg
