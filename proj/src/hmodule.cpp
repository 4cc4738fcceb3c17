#include "finalg/hmodule.hpp"

#include <algorithm>

#include "finalg/iso.hpp"

namespace finalg {

ValidationReport validate_hmodule(const FiniteHeapOfModules& hm) {
    ValidationReport rep;
    const int nt = hm.torder();
    const int nm = hm.morder();
    if (hm.lambda.size() != size_t(nt) * nm * nm) {
        rep.structural_ok = false;
        rep.structural_message = cat("hmodule: lambda table has ", hm.lambda.size(),
                                     " entries, expected ", size_t(nt) * nm * nm);
        return rep;
    }
    for (Elem v : hm.lambda)
        if (!in_range(v, nm)) {
            rep.structural_ok = false;
            rep.structural_message = cat("hmodule: lambda entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem s = 0; s < nt && pass; ++s)
            for (Elem u = 0; u < nt && pass; ++u)
                for (Elem m = 0; m < nm && pass; ++m)
                    for (Elem n = 0; n < nm && pass; ++n) {
                        Elem lhs = hm.lam(hm.truss.bracket(t, s, u), m, n);
                        Elem rhs =
                            hm.heap.at(hm.lam(t, m, n), hm.lam(s, m, n), hm.lam(u, m, n));
                        if (lhs != rhs) {
                            pass = false;
                            w = cat("L([", t, ",", s, ",", u, "],", m, ",", n, ") = ", lhs,
                                    " but bracket of images = ", rhs);
                        }
                    }
    rep.add("first-entry-morphism", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m = 0; m < nm && pass; ++m)
            for (Elem x = 0; x < nm && pass; ++x)
                for (Elem y = 0; y < nm && pass; ++y)
                    for (Elem z = 0; z < nm && pass; ++z) {
                        Elem lhs = hm.lam(t, m, hm.heap.at(x, y, z));
                        Elem rhs =
                            hm.heap.at(hm.lam(t, m, x), hm.lam(t, m, y), hm.lam(t, m, z));
                        if (lhs != rhs) {
                            pass = false;
                            w = cat("L(", t, ",", m, ",[", x, ",", y, ",", z, "]) = ", lhs,
                                    " but bracket of images = ", rhs);
                        }
                    }
    rep.add("third-entry-morphism", pass, w);

    pass = true;
    w.clear();
    for (Elem s = 0; s < nt && pass; ++s)
        for (Elem t = 0; t < nt && pass; ++t)
            for (Elem m = 0; m < nm && pass; ++m)
                for (Elem n = 0; n < nm && pass; ++n) {
                    Elem lhs = hm.lam(hm.truss.times(s, t), m, n);
                    Elem rhs = hm.lam(s, m, hm.lam(t, m, n));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat("L(", s, "*", t, ",", m, ",", n, ") = ", lhs, " but L(", s, ",", m,
                                ",L(", t, ",", m, ",", n, ")) = ", rhs);
                    }
                }
    rep.add("associativity", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m = 0; m < nm && pass; ++m)
            for (Elem n = 0; n < nm && pass; ++n)
                for (Elem e = 0; e < nm && pass; ++e) {
                    Elem lhs = hm.lam(t, m, n);
                    Elem rhs = hm.heap.at(hm.lam(t, e, n), hm.lam(t, e, m), m);
                    if (lhs != rhs) {
                        pass = false;
                        w = cat("L(", t, ",", m, ",", n, ") = ", lhs, " but base-change RHS [L(",
                                t, ",", e, ",", n, "),L(", t, ",", e, ",", m, "),", m,
                                "] = ", rhs);
                    }
                }
    rep.add("base-change", pass, w);
    return rep;
}

FiniteHeapOfModules make_hmodule(FiniteTruss t, FiniteHeap carrier, Table3 lambda) {
    FiniteHeapOfModules hm;
    hm.truss = std::move(t);
    hm.heap = std::move(carrier);
    hm.lambda = std::move(lambda);
    ValidationReport rep = validate_hmodule(hm);
    if (!rep.structural_ok) throw StructuralError(rep.structural_message);
    if (!rep.valid()) throw MathError(cat("make_hmodule: axioms fail\n", rep.to_string()));
    return hm;
}

ValidationReport derived_identities(const FiniteHeapOfModules& hm) {
    ValidationReport rep;
    const int nt = hm.torder();
    const int nm = hm.morder();

    bool pass = true;
    std::string w;
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m = 0; m < nm && pass; ++m)
            if (hm.lam(t, m, m) != m) {
                pass = false;
                w = cat("L(", t, ",", m, ",", m, ") = ", hm.lam(t, m, m), ", expected ", m);
            }
    rep.add("idempotency", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m = 0; m < nm && pass; ++m)
            for (Elem n = 0; n < nm && pass; ++n) {
                Elem rhs = hm.heap.at(n, hm.lam(t, n, m), m);
                if (hm.lam(t, m, n) != rhs) {
                    pass = false;
                    w = cat("L(", t, ",", m, ",", n, ") != [", n, ",L(", t, ",", n, ",", m, "),",
                            m, "]");
                }
            }
    rep.add("swap", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem e = 0; e < nm && pass; ++e)
            for (Elem f = 0; f < nm && pass; ++f)
                for (Elem m = 0; m < nm && pass; ++m)
                    for (Elem n = 0; n < nm && pass; ++n) {
                        Elem lhs = hm.lam(t, hm.heap.at(e, m, f), hm.heap.at(e, n, f));
                        Elem rhs = hm.heap.at(e, hm.lam(t, m, n), f);
                        if (lhs != rhs) {
                            pass = false;
                            w = cat("L(", t, ",[", e, ",", m, ",", f, "],[", e, ",", n, ",", f,
                                    "]) = ", lhs, " but [", e, ",L(", t, ",", m, ",", n, "),", f,
                                    "] = ", rhs);
                        }
                    }
    rep.add("translation-conjugation", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m1 = 0; m1 < nm && pass; ++m1)
            for (Elem m2 = 0; m2 < nm && pass; ++m2)
                for (Elem m3 = 0; m3 < nm && pass; ++m3)
                    for (Elem n = 0; n < nm && pass; ++n) {
                        Elem lhs = hm.lam(t, hm.heap.at(m1, m2, m3), n);
                        Elem rhs = hm.heap.at(hm.lam(t, m1, n), hm.lam(t, m2, n),
                                              hm.lam(t, m3, n));
                        if (lhs != rhs) {
                            pass = false;
                            w = cat("middle-entry law fails at (", t, ",", m1, ",", m2, ",", m3,
                                    ",", n, ")");
                        }
                    }
    rep.add("middle-entry-morphism", pass, w);

    // Both base-change formulations agree: [L(t,m,e),e,L(t,e,n)] = L(t,m,n).
    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem m = 0; m < nm && pass; ++m)
            for (Elem n = 0; n < nm && pass; ++n)
                for (Elem e = 0; e < nm && pass; ++e) {
                    Elem lhs = hm.heap.at(hm.lam(t, m, e), e, hm.lam(t, e, n));
                    if (lhs != hm.lam(t, m, n)) {
                        pass = false;
                        w = cat("[L(", t, ",", m, ",", e, "),", e, ",L(", t, ",", e, ",", n,
                                ")] = ", lhs, " but L(", t, ",", m, ",", n,
                                ") = ", hm.lam(t, m, n));
                    }
                }
    rep.add("base-change-equivalent-form", pass, w);
    return rep;
}

FiniteHeapOfModules from_module(const FiniteTModule& m) {
    FiniteHeapOfModules hm;
    hm.truss = m.truss;
    hm.heap = m.heap;
    const int nt = m.truss.order();
    const int nm = m.heap.order;
    hm.lambda.resize(size_t(nt) * nm * nm);
    for (Elem t = 0; t < nt; ++t)
        for (Elem e = 0; e < nm; ++e)
            for (Elem n = 0; n < nm; ++n)
                hm.lambda[(size_t(t) * nm + e) * nm + n] =
                    m.heap.at(m.act(t, n), m.act(t, e), e);
    ValidationReport rep = validate_hmodule(hm);
    if (!rep.valid())
        throw ContractViolation(cat("from_module: output fails axioms\n", rep.to_string()));
    return hm;
}

FiniteTModule to_module(const FiniteHeapOfModules& hm, Elem e) {
    if (hm.morder() == 0) throw MathError("to_module: empty carrier");
    if (!in_range(e, hm.morder())) throw StructuralError("to_module: e out of range");
    FiniteTModule m;
    m.truss = hm.truss;
    m.heap = hm.heap;
    m.action.resize(size_t(hm.torder()) * hm.morder());
    for (Elem t = 0; t < hm.torder(); ++t)
        for (Elem x = 0; x < hm.morder(); ++x)
            m.action[size_t(t) * hm.morder() + x] = hm.lam(t, e, x);
    return m;
}

ElemSet stabilizer_hm(const FiniteHeapOfModules& hm) {
    const int nt = hm.torder();
    if (hm.morder() == 0) return ElemSet::full(nt);
    ElemSet s(nt);
    for (Elem u = 0; u < nt; ++u) {
        bool fixes = true;
        for (Elem m = 0; m < hm.morder() && fixes; ++m)
            for (Elem n = 0; n < hm.morder() && fixes; ++n) fixes = hm.lam(u, m, n) == n;
        if (fixes) s.insert(u);
    }
    std::string w;
    if (!s.empty() && !is_paragon(hm.truss, s, &w))
        throw ContractViolation(cat("stabilizer_hm: not a paragon: ", w));
    if (!s.empty() && !is_subtruss(hm.truss, s, &w))
        throw ContractViolation(cat("stabilizer_hm: not a sub-truss: ", w));
    for (Elem e = 0; e < hm.morder(); ++e)
        if (stabilizer(to_module(hm, e)) != s)
            throw ContractViolation(
                cat("stabilizer_hm: disagrees with module-level stabilizer at e = ", e));
    return s;
}

ElemSet annihilator_hm(const FiniteHeapOfModules& hm) {
    const int nt = hm.torder();
    if (hm.morder() == 0) return ElemSet::full(nt);
    ElemSet s(nt);
    for (Elem z = 0; z < nt; ++z) {
        bool contracts = true;
        for (Elem m = 0; m < hm.morder() && contracts; ++m)
            for (Elem n = 0; n < hm.morder() && contracts; ++n) contracts = hm.lam(z, m, n) == m;
        if (contracts) s.insert(z);
    }
    std::string w;
    if (!s.empty() && !is_ideal(hm.truss, s, IdealSide::TwoSided, &w))
        throw ContractViolation(cat("annihilator_hm: not a two-sided ideal: ", w));
    for (Elem e = 0; e < hm.morder(); ++e)
        if (annihilator(to_module(hm, e), e) != s)
            throw ContractViolation(
                cat("annihilator_hm: disagrees with module-level annihilator at e = ", e));
    return s;
}

HModClass classify(const FiniteHeapOfModules& hm) {
    HModClass c;
    c.inhabited = hm.morder() > 0;
    c.stab = stabilizer_hm(hm);
    c.ann = annihilator_hm(hm);
    c.isotropic = !c.stab.empty();
    c.contractible = !c.ann.empty();
    return c;
}

HModQuotient congruence_classes(const FiniteHeapOfModules& hm, const ElemSet& n) {
    if (n.empty()) throw MathError("congruence_classes: subset is empty");
    std::string w;
    if (!is_subheap(hm.heap, n, &w))
        throw MathError(cat("congruence_classes: not a sub-heap: ", w));
    for (Elem t = 0; t < hm.torder(); ++t)
        for (Elem a : n.members())
            for (Elem b : n.members())
                if (!n.contains(hm.lam(t, a, b)))
                    throw MathError(cat("congruence_classes: L(", t, ",", a, ",", b, ") = ",
                                        hm.lam(t, a, b), " escapes the subset"));

    HeapQuotient hq = subheap_relation(hm.heap, n);
    HModQuotient q;
    q.class_of = hq.class_of;
    q.classes = hq.classes;

    // Each class is closed under Lambda.
    for (Elem t = 0; t < hm.torder(); ++t)
        for (Elem a = 0; a < hm.morder(); ++a)
            for (Elem b = 0; b < hm.morder(); ++b)
                if (q.class_of[a] == q.class_of[b] &&
                    q.class_of[hm.lam(t, a, b)] != q.class_of[a])
                    throw ContractViolation("congruence_classes: class not Lambda-closed");

    const int m = int(hq.classes.size());
    Table3 lam(size_t(hm.torder()) * m * m, -1);
    for (Elem t = 0; t < hm.torder(); ++t)
        for (Elem a = 0; a < hm.morder(); ++a)
            for (Elem b = 0; b < hm.morder(); ++b) {
                size_t idx = (size_t(t) * m + q.class_of[a]) * m + q.class_of[b];
                int val = q.class_of[hm.lam(t, a, b)];
                if (lam[idx] < 0)
                    lam[idx] = val;
                else if (lam[idx] != val)
                    throw ContractViolation("congruence_classes: quotient action ill-defined");
            }
    q.quotient.truss = hm.truss;
    q.quotient.heap = hq.quotient;
    q.quotient.lambda = std::move(lam);
    ValidationReport rep = validate_hmodule(q.quotient);
    if (!rep.valid())
        throw ContractViolation(cat("congruence_classes: quotient invalid\n", rep.to_string()));
    return q;
}

CrossProductTruss cross_product(const FiniteHeapOfModules& hm, Elem e) {
    const int nt = hm.torder();
    const int nm = hm.morder();
    if (nt == 0 || nm == 0) throw MathError("cross_product: T and M must be non-empty");
    if (!in_range(e, nm)) throw StructuralError("cross_product: e out of range");

    CrossProductTruss cp;
    cp.basepoint = e;
    cp.m_order = nm;
    cp.t_order = nt;
    const int N = nm * nt;

    FiniteHeap heap;
    heap.order = N;
    heap.ternary.resize(size_t(N) * N * N);
    for (Elem x = 0; x < N; ++x)
        for (Elem y = 0; y < N; ++y)
            for (Elem z = 0; z < N; ++z) {
                Elem m = hm.heap.at(cp.part_m(x), cp.part_m(y), cp.part_m(z));
                Elem t = hm.truss.bracket(cp.part_t(x), cp.part_t(y), cp.part_t(z));
                heap.ternary[(size_t(x) * N + y) * N + z] = cp.encode(m, t);
            }

    Table2 mul(size_t(N) * N);
    for (Elem x = 0; x < N; ++x)
        for (Elem y = 0; y < N; ++y) {
            Elem m = cp.part_m(x), s = cp.part_t(x);
            Elem n = cp.part_m(y), t = cp.part_t(y);
            Elem first = hm.heap.at(hm.lam(s, e, n), e, m);
            mul[size_t(x) * N + y] = cp.encode(first, hm.truss.times(s, t));
        }
    cp.truss = make_truss(std::move(heap), std::move(mul));
    return cp;
}

bool is_hmodule_morphism(const Table1& f, const FiniteHeapOfModules& src,
                         const FiniteHeapOfModules& dst, std::string* witness) {
    if (!src.truss.same_tables(dst.truss))
        throw StructuralError("is_hmodule_morphism: different trusses");
    if (!is_heap_morphism(f, src.heap, dst.heap, witness)) return false;
    for (Elem t = 0; t < src.torder(); ++t)
        for (Elem m = 0; m < src.morder(); ++m)
            for (Elem n = 0; n < src.morder(); ++n)
                if (f[src.lam(t, m, n)] != dst.lam(t, f[m], f[n])) {
                    if (witness)
                        *witness = cat("f(L(", t, ",", m, ",", n, ")) = ", f[src.lam(t, m, n)],
                                       " but L(", t, ",f", m, ",f", n,
                                       ") = ", dst.lam(t, f[m], f[n]));
                    return false;
                }
    return true;
}

std::vector<Table1> hmodule_morphisms(const FiniteHeapOfModules& src,
                                      const FiniteHeapOfModules& dst, long long budget) {
    std::vector<Table1> candidates = heap_morphisms(src.heap, dst.heap);
    long long per = (long long)src.torder() * src.morder() * src.morder() + 1;
    if ((long long)candidates.size() * per > budget)
        throw ResourceError(cat("hmodule_morphisms: ", candidates.size(), " candidates x ", per,
                                " checks exceed budget ", budget));
    std::vector<Table1> out;
    for (auto& f : candidates)
        if (is_hmodule_morphism(f, src, dst)) out.push_back(std::move(f));
    std::sort(out.begin(), out.end());
    return out;
}

int TGroupEndoTruss::index_of(const Table1& f) const {
    auto it = std::lower_bound(endos.begin(), endos.end(), f);
    if (it == endos.end() || *it != f) return -1;
    return int(it - endos.begin());
}

TGroupEndoTruss tgroup_endo_truss(const FiniteTGroup& g) {
    TGroupEndoTruss et;
    et.endos = tgroup_morphisms(g, g);
    std::sort(et.endos.begin(), et.endos.end());
    const int m = int(et.endos.size());
    const int n = g.group.order;

    FiniteHeap heap;
    heap.order = m;
    heap.ternary.resize(size_t(m) * m * m);
    Table1 tmp(n);
    auto idx_of = [&](const Table1& f) {
        int i = et.index_of(f);
        if (i < 0) throw ContractViolation("tgroup_endo_truss: operation escaped the set");
        return i;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (Elem x = 0; x < n; ++x)
                    tmp[x] = g.group.at(g.group.sub(et.endos[i][x], et.endos[j][x]),
                                        et.endos[k][x]);
                heap.ternary[(size_t(i) * m + j) * m + k] = idx_of(tmp);
            }
    Table2 mul(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (Elem x = 0; x < n; ++x) tmp[x] = et.endos[i][et.endos[j][x]];
            mul[size_t(i) * m + j] = idx_of(tmp);
        }
    et.truss = make_truss(std::move(heap), std::move(mul));
    return et;
}

int HModEndoTruss::index_of(const Table1& f) const {
    auto it = std::lower_bound(endos.begin(), endos.end(), f);
    if (it == endos.end() || *it != f) return -1;
    return int(it - endos.begin());
}

HModEndoTruss endo_truss_ET(const FiniteTGroup& g, long long budget) {
    FiniteHeapOfModules hm = from_module(tgroup_to_module(g));
    HModEndoTruss et;
    et.endos = hmodule_morphisms(hm, hm, budget);
    const int m = int(et.endos.size());
    const int n = g.group.order;

    FiniteHeap heap;
    heap.order = m;
    heap.ternary.resize(size_t(m) * m * m);
    Table1 tmp(n);
    auto idx_of = [&](const Table1& f) {
        int i = et.index_of(f);
        if (i < 0) throw ContractViolation("endo_truss_ET: operation escaped the set");
        return i;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (Elem x = 0; x < n; ++x)
                    tmp[x] = hm.heap.at(et.endos[i][x], et.endos[j][x], et.endos[k][x]);
                heap.ternary[(size_t(i) * m + j) * m + k] = idx_of(tmp);
            }
    Table2 mul(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (Elem x = 0; x < n; ++x) tmp[x] = et.endos[i][et.endos[j][x]];
            mul[size_t(i) * m + j] = idx_of(tmp);
        }
    et.truss = make_truss(std::move(heap), std::move(mul));

    // Crossed-product decomposition f -> (f(0), f - f(0)): a table-exact
    // truss isomorphism onto G x| T-Grp(G) at the group zero.
    TGroupEndoTruss tg = tgroup_endo_truss(g);
    FiniteTModule eval_mod;
    eval_mod.truss = tg.truss;
    eval_mod.heap = hm.heap;
    eval_mod.action.resize(size_t(tg.truss.order()) * n);
    for (int i = 0; i < tg.truss.order(); ++i)
        for (Elem x = 0; x < n; ++x) eval_mod.action[size_t(i) * n + x] = tg.endos[i][x];
    {
        ValidationReport mrep = validate_module(eval_mod);
        if (!mrep.valid())
            throw ContractViolation("endo_truss_ET: evaluation action is not a module");
    }
    CrossProductTruss cross = cross_product(from_module(eval_mod), g.group.zero);

    Table1 phi(m);
    std::vector<char> hit(cross.truss.order(), 0);
    for (int i = 0; i < m; ++i) {
        const Table1& f = et.endos[i];
        Table1 F(n);
        for (Elem x = 0; x < n; ++x) F[x] = g.group.sub(f[x], f[g.group.zero]);
        int fi = tg.index_of(F);
        if (fi < 0)
            throw ContractViolation("endo_truss_ET: linear part is not a T-group endomorphism");
        phi[i] = cross.encode(f[g.group.zero], fi);
        if (hit[phi[i]])
            throw ContractViolation("endo_truss_ET: crossed-product map not injective");
        hit[phi[i]] = 1;
    }
    if (m != cross.truss.order())
        throw ContractViolation("endo_truss_ET: crossed-product map not onto");
    std::string w;
    if (!is_truss_morphism(phi, et.truss, cross.truss, &w))
        throw ContractViolation(cat("endo_truss_ET: crossed-product map not a morphism: ", w));
    return et;
}

BaerKaplanskyResult baer_kaplansky_check(const FiniteTGroup& m, const FiniteTGroup& n,
                                         long long budget) {
    BaerKaplanskyResult res{};

    HModEndoTruss em = endo_truss_ET(m, budget);
    HModEndoTruss en = endo_truss_ET(n, budget);
    std::vector<TableRef> xs = {{3, &em.truss.heap.ternary}, {2, &em.truss.mul}};
    std::vector<TableRef> ys = {{3, &en.truss.heap.ternary}, {2, &en.truss.mul}};
    res.endo_trusses_isomorphic =
        em.truss.order() == en.truss.order() && find_table_isomorphism(em.truss.order(), xs, ys).has_value();

    // Independent route: a group isomorphism phi with
    // phi o F o phi^-1 ranging exactly over the other endomorphism truss.
    TGroupEndoTruss tm = tgroup_endo_truss(m);
    TGroupEndoTruss tn = tgroup_endo_truss(n);
    res.intertwined_pair_exists = false;
    for (const Table1& phi : group_isos(m.group, n.group)) {
        Table1 inv(phi.size());
        for (size_t i = 0; i < phi.size(); ++i) inv[phi[i]] = Elem(i);
        std::vector<Table1> conj;
        conj.reserve(tm.endos.size());
        for (const Table1& F : tm.endos) {
            Table1 c(phi.size());
            for (size_t x = 0; x < phi.size(); ++x) c[x] = phi[F[inv[x]]];
            conj.push_back(std::move(c));
        }
        std::sort(conj.begin(), conj.end());
        if (conj == tn.endos) {
            res.intertwined_pair_exists = true;
            break;
        }
    }

    if (res.endo_trusses_isomorphic != res.intertwined_pair_exists)
        throw ContractViolation("baer_kaplansky_check: the two verdicts disagree");
    return res;
}

DerivationHeap derivations(const FiniteTruss& t) {
    DerivationHeap dh;
    const int n = t.order();
    for (const Table1& d : heap_morphisms(t.heap, t.heap)) {
        bool leibniz = true;
        for (Elem s = 0; s < n && leibniz; ++s)
            for (Elem u = 0; u < n && leibniz; ++u) {
                Elem lhs = d[t.times(s, u)];
                Elem rhs = t.bracket(t.times(d[s], u), t.times(s, u), t.times(s, d[u]));
                leibniz = lhs == rhs;
            }
        if (leibniz) dh.derivations.push_back(d);
    }
    std::sort(dh.derivations.begin(), dh.derivations.end());

    const int m = int(dh.derivations.size());
    auto index_of = [&](const Table1& f) {
        auto it = std::lower_bound(dh.derivations.begin(), dh.derivations.end(), f);
        if (it == dh.derivations.end() || *it != f) return -1;
        return int(it - dh.derivations.begin());
    };

    dh.heap.order = m;
    dh.heap.ternary.resize(size_t(m) * m * m);
    Table1 tmp(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (Elem x = 0; x < n; ++x)
                    tmp[x] = t.heap.at(dh.derivations[i][x], dh.derivations[j][x],
                                       dh.derivations[k][x]);
                int idx = index_of(tmp);
                if (idx < 0)
                    throw ContractViolation("derivations: not closed under the bracket");
                dh.heap.ternary[(size_t(i) * m + j) * m + k] = idx;
            }
    {
        ValidationReport rep = validate_heap(dh.heap);
        if (!rep.valid()) throw ContractViolation("derivations: bracket heap invalid");
    }

    if (is_commutative(t) && m > 0) {
        Table3 lam(size_t(n) * m * m);
        for (Elem s = 0; s < n; ++s)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    for (Elem x = 0; x < n; ++x)
                        tmp[x] = t.bracket(dh.derivations[i][x],
                                           t.times(s, dh.derivations[i][x]),
                                           t.times(s, dh.derivations[j][x]));
                    int idx = index_of(tmp);
                    if (idx < 0)
                        throw ContractViolation(
                            "derivations: action left the derivation heap");
                    lam[(size_t(s) * m + i) * m + j] = idx;
                }
        FiniteHeapOfModules hm;
        hm.truss = t;
        hm.heap = dh.heap;
        hm.lambda = std::move(lam);
        ValidationReport rep = validate_hmodule(hm);
        if (!rep.valid())
            throw ContractViolation(
                cat("derivations: heap of modules axioms fail\n", rep.to_string()));
        dh.hmodule = std::move(hm);
    }
    return dh;
}

EntropyVerdict entropy_check(const FiniteHeapOfModules& hm, Elem t, Elem t2) {
    const int nm = hm.morder();
    Elem tt = hm.truss.times(t, t2);
    Elem t2t = hm.truss.times(t2, t);
    if (nm == 0) return EntropyVerdict::Holds;

    // Hypothesis at one basepoint implies it at every basepoint.
    auto hyp_at = [&](Elem e) {
        for (Elem m = 0; m < nm; ++m)
            if (hm.lam(tt, e, m) != hm.lam(t2t, e, m)) return false;
        return true;
    };
    bool h0 = hyp_at(0);
    for (Elem e = 1; e < nm; ++e)
        if (hyp_at(e) != h0)
            throw ContractViolation("entropy_check: hypothesis depends on the basepoint");
    if (!h0) return EntropyVerdict::HypothesisNotSatisfied;

    for (Elem m = 0; m < nm; ++m)
        for (Elem m2 = 0; m2 < nm; ++m2)
            for (Elem m3 = 0; m3 < nm; ++m3)
                for (Elem n = 0; n < nm; ++n) {
                    Elem lhs = hm.lam(t, hm.lam(t2, m, m2), hm.lam(t2, m3, n));
                    Elem rhs = hm.lam(t2, hm.lam(t, m, m3), hm.lam(t, m2, n));
                    if (lhs != rhs)
                        throw ContractViolation(
                            cat("entropy_check: interchange fails at (", m, ",", m2, ",", m3, ",",
                                n, ")"));
                }
    return EntropyVerdict::Holds;
}

RingAffineClass ring_affine_classify(const FiniteHeapOfModules& hm) {
    if (!hm.truss.unit || !hm.truss.absorber)
        throw MathError("ring_affine_classify: truss has no unit or no absorber");
    RingAffineClass out;
    HModClass c = classify(hm);
    out.is_affine_module =
        c.inhabited && c.stab.contains(*hm.truss.unit) && c.ann.contains(*hm.truss.absorber);
    if (out.is_affine_module) {
        FiniteTModule mod = to_module(hm, 0);
        if (!from_module(mod).same_tables(hm))
            throw ContractViolation("ring_affine_classify: reconstruction changed the tables");
        // Morphism form: x -> [f(x), f(0), 0] is a module endomorphism for
        // every heap-of-modules endomorphism f.
        for (const Table1& f : hmodule_morphisms(hm, hm)) {
            Table1 g(hm.morder());
            for (Elem x = 0; x < hm.morder(); ++x) g[x] = hm.heap.at(f[x], f[0], 0);
            std::string w;
            if (!is_module_morphism(g, mod, mod, &w))
                throw ContractViolation(
                    cat("ring_affine_classify: translated morphism is not linear: ", w));
        }
        out.module = std::move(mod);
    }
    return out;
}

}  // namespace finalg
