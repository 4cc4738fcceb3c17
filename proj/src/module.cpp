#include "finalg/module.hpp"

namespace finalg {

ValidationReport validate_module(const FiniteTModule& m) {
    ValidationReport rep;
    const int nt = m.truss.order();
    const int nm = m.heap.order;
    if (m.action.size() != size_t(nt) * nm) {
        rep.structural_ok = false;
        rep.structural_message = cat("module: action table has ", m.action.size(),
                                     " entries, expected ", size_t(nt) * nm);
        return rep;
    }
    for (Elem v : m.action)
        if (!in_range(v, nm)) {
            rep.structural_ok = false;
            rep.structural_message = cat("module: action entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem s = 0; s < nt && pass; ++s)
            for (Elem x = 0; x < nm && pass; ++x)
                if (m.act(t, m.act(s, x)) != m.act(m.truss.times(t, s), x)) {
                    pass = false;
                    w = cat(t, ".(", s, ".", x, ") = ", m.act(t, m.act(s, x)), " but (", t, "*", s,
                            ").", x, " = ", m.act(m.truss.times(t, s), x));
                }
    rep.add("associativity", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem s = 0; s < nt && pass; ++s)
            for (Elem u = 0; u < nt && pass; ++u)
                for (Elem x = 0; x < nm && pass; ++x) {
                    Elem lhs = m.act(m.truss.bracket(t, s, u), x);
                    Elem rhs = m.heap.at(m.act(t, x), m.act(s, x), m.act(u, x));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat("[", t, ",", s, ",", u, "].", x, " = ", lhs, " but [", t, ".", x,
                                ",", s, ".", x, ",", u, ".", x, "] = ", rhs);
                    }
                }
    rep.add("truss-linearity", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem x = 0; x < nm && pass; ++x)
            for (Elem y = 0; y < nm && pass; ++y)
                for (Elem z = 0; z < nm && pass; ++z) {
                    Elem lhs = m.act(t, m.heap.at(x, y, z));
                    Elem rhs = m.heap.at(m.act(t, x), m.act(t, y), m.act(t, z));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat(t, ".[", x, ",", y, ",", z, "] = ", lhs, " but [", t, ".", x, ",",
                                t, ".", y, ",", t, ".", z, "] = ", rhs);
                    }
                }
    rep.add("carrier-linearity", pass, w);

    if (m.truss.unit) {
        bool unital = true;
        for (Elem x = 0; x < nm; ++x)
            if (m.act(*m.truss.unit, x) != x) unital = false;
        rep.unital = unital;
    }
    return rep;
}

FiniteTModule make_module(FiniteTruss t, FiniteHeap carrier, Table2 action) {
    FiniteTModule m;
    m.truss = std::move(t);
    m.heap = std::move(carrier);
    m.action = std::move(action);
    ValidationReport rep = validate_module(m);
    if (!rep.structural_ok) throw StructuralError(rep.structural_message);
    if (!rep.valid()) throw MathError(cat("make_module: axioms fail\n", rep.to_string()));
    return m;
}

FiniteTModule regular_module(const FiniteTruss& t) {
    FiniteTModule m;
    m.truss = t;
    m.heap = t.heap;
    m.action = t.mul;
    return m;
}

FiniteTModule star_module(const FiniteTruss& t) {
    FiniteTModule m;
    m.truss = t;
    m.heap.order = 1;
    m.heap.ternary = {0};
    m.action.assign(size_t(t.order()), 0);
    return m;
}

FiniteTModule induced_action(const FiniteTModule& m, Elem e) {
    if (!in_range(e, m.heap.order)) throw StructuralError("induced_action: e out of range");
    FiniteTModule out = m;
    for (Elem t = 0; t < m.truss.order(); ++t)
        for (Elem x = 0; x < m.heap.order; ++x)
            out.action[size_t(t) * m.heap.order + x] =
                m.heap.at(m.act(t, x), m.act(t, e), e);
    return out;
}

ElemSet stabilizer(const FiniteTModule& m) {
    const int nt = m.truss.order();
    ElemSet s(nt);
    if (m.heap.order == 0) return ElemSet::full(nt);
    for (Elem u = 0; u < nt; ++u) {
        bool fixes = true;
        for (Elem x = 0; x < m.heap.order && fixes; ++x) fixes = m.act(u, x) == x;
        if (fixes) s.insert(u);
    }
    if (!s.empty()) {
        std::string w;
        if (!is_paragon(m.truss, s, &w))
            throw ContractViolation(cat("stabilizer: not a paragon: ", w));
        if (!is_subtruss(m.truss, s, &w))
            throw ContractViolation(cat("stabilizer: not a sub-truss: ", w));
    }
    return s;
}

ElemSet annihilator(const FiniteTModule& m, Elem e) {
    if (m.heap.order == 0) throw MathError("annihilator: empty carrier");
    if (!in_range(e, m.heap.order)) throw StructuralError("annihilator: e out of range");
    const int nt = m.truss.order();
    ElemSet s(nt);
    for (Elem z = 0; z < nt; ++z) {
        bool kills = true;
        for (Elem x = 0; x < m.heap.order && kills; ++x) kills = m.act(z, x) == e;
        if (kills) s.insert(z);
    }
    if (!s.empty()) {
        std::string w;
        if (!is_paragon(m.truss, s, &w))
            throw ContractViolation(cat("annihilator: not a paragon: ", w));
        if (!is_ideal(m.truss, s, IdealSide::Right, &w))
            throw ContractViolation(cat("annihilator: not a right ideal: ", w));
        bool e_absorbs = true;
        for (Elem t = 0; t < nt; ++t)
            if (m.act(t, e) != e) e_absorbs = false;
        if (e_absorbs && !is_ideal(m.truss, s, IdealSide::TwoSided, &w))
            throw ContractViolation(cat("annihilator: not two-sided at an absorber: ", w));
    }
    return s;
}

ElemSet absorbers(const FiniteTModule& m) {
    const int nm = m.heap.order;
    ElemSet s(nm);
    for (Elem e = 0; e < nm; ++e) {
        bool absorbs = true;
        for (Elem t = 0; t < m.truss.order() && absorbs; ++t) absorbs = m.act(t, e) == e;
        if (absorbs) s.insert(e);
    }
    // e absorber iff the e-induced action is the original action.
    for (Elem e = 0; e < nm; ++e) {
        FiniteTModule ind = induced_action(m, e);
        bool same = ind.action == m.action;
        if (same != s.contains(e))
            throw ContractViolation(cat("absorbers: induced-action criterion disagrees at ", e));
    }
    return s;
}

ValidationReport validate_tgroup(const FiniteTGroup& g) {
    ValidationReport rep = validate_group(g.group);
    if (!rep.structural_ok) return rep;
    const int nt = g.truss.order();
    const int ng = g.group.order;
    if (g.action.size() != size_t(nt) * ng) {
        rep.structural_ok = false;
        rep.structural_message = "tgroup: action table size mismatch";
        return rep;
    }
    for (Elem v : g.action)
        if (!in_range(v, ng)) {
            rep.structural_ok = false;
            rep.structural_message = cat("tgroup: action entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem s = 0; s < nt && pass; ++s)
            for (Elem u = 0; u < nt && pass; ++u)
                for (Elem x = 0; x < ng && pass; ++x) {
                    Elem lhs = g.act(g.truss.bracket(t, s, u), x);
                    Elem rhs = g.group.at(g.group.sub(g.act(t, x), g.act(s, x)), g.act(u, x));
                    if (lhs != rhs) {
                        pass = false;
                        w = cat("[", t, ",", s, ",", u, "].", x, " = ", lhs,
                                " but t.x - t'.x + t''.x = ", rhs);
                    }
                }
    rep.add("bracket-additivity", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem x = 0; x < ng && pass; ++x)
            for (Elem y = 0; y < ng && pass; ++y) {
                Elem lhs = g.act(t, g.group.at(x, y));
                Elem rhs = g.group.at(g.act(t, x), g.act(t, y));
                if (lhs != rhs) {
                    pass = false;
                    w = cat(t, ".(", x, "+", y, ") = ", lhs, " but ", t, ".", x, " + ", t, ".", y,
                            " = ", rhs);
                }
            }
    rep.add("action-additivity", pass, w);

    pass = true;
    w.clear();
    for (Elem t = 0; t < nt && pass; ++t)
        for (Elem s = 0; s < nt && pass; ++s)
            for (Elem x = 0; x < ng && pass; ++x)
                if (g.act(t, g.act(s, x)) != g.act(g.truss.times(t, s), x)) {
                    pass = false;
                    w = cat(t, ".(", s, ".", x, ") != (", t, "*", s, ").", x);
                }
    rep.add("multiplicativity", pass, w);

    for (Elem t = 0; t < nt && !rep.isotropic; ++t) {
        bool fixes = true;
        for (Elem x = 0; x < ng && fixes; ++x) fixes = g.act(t, x) == x;
        if (fixes) rep.isotropic = true;
    }
    return rep;
}

FiniteTGroup make_tgroup(FiniteAbelianGroup g, FiniteTruss t, Table2 action) {
    FiniteTGroup out;
    out.group = std::move(g);
    out.truss = std::move(t);
    out.action = std::move(action);
    ValidationReport rep = validate_tgroup(out);
    if (!rep.structural_ok) throw StructuralError(rep.structural_message);
    if (!rep.valid()) throw MathError(cat("make_tgroup: axioms fail\n", rep.to_string()));
    return out;
}

FiniteTGroup regular_tgroup_mod(int n) {
    FiniteRing r = ring_mod(n);
    return make_tgroup(r.add, truss_from_ring(r), r.mul);
}

FiniteTModule tgroup_to_module(const FiniteTGroup& g) {
    FiniteTModule m;
    m.truss = g.truss;
    m.heap = heap_from_group(g.group);
    m.action = g.action;
    return m;
}

FiniteTGroup module_to_tgroup(const FiniteTModule& m, Elem absorber) {
    if (m.heap.order == 0) throw MathError("module_to_tgroup: empty carrier");
    for (Elem t = 0; t < m.truss.order(); ++t)
        if (m.act(t, absorber) != absorber)
            throw MathError(cat("module_to_tgroup: ", absorber, " is not an absorber (", t, ".",
                                absorber, " = ", m.act(t, absorber), ")"));
    FiniteTGroup g;
    g.group = retract(m.heap, absorber);
    g.truss = m.truss;
    g.action = m.action;
    return g;
}

bool coset_induced_submodule_test(const FiniteTGroup& m, const ElemSet& s) {
    const auto mem = s.members();

    // Route 1: S = m0 + N for a submodule N.
    bool route1 = false;
    if (!mem.empty()) {
        Elem m0 = mem.front();
        ElemSet diff(m.group.order);
        for (Elem x : mem) diff.insert(m.group.sub(x, m0));
        route1 = is_subgroup(m.group, diff);
        for (Elem t = 0; t < m.truss.order() && route1; ++t)
            for (Elem x : diff.members())
                if (!diff.contains(m.act(t, x))) {
                    route1 = false;
                    break;
                }
    }

    // Route 2: non-empty sub-heap closed under all induced actions at its
    // own points: [t.s, t.e, e] within S.
    bool route2 = !mem.empty();
    if (route2) {
        FiniteHeap h = heap_from_group(m.group);
        route2 = is_subheap(h, s);
        for (Elem t = 0; t < m.truss.order() && route2; ++t)
            for (Elem e : mem) {
                for (Elem x : mem) {
                    Elem v = m.group.at(m.group.sub(m.act(t, x), m.act(t, e)), e);
                    if (!s.contains(v)) {
                        route2 = false;
                        break;
                    }
                }
                if (!route2) break;
            }
    }

    if (route1 != route2)
        throw ContractViolation("coset_induced_submodule_test: the two routes disagree");
    return route1;
}

bool is_module_morphism(const Table1& f, const FiniteTModule& src, const FiniteTModule& dst,
                        std::string* witness) {
    if (!src.truss.same_tables(dst.truss))
        throw StructuralError("is_module_morphism: modules over different trusses");
    if (!is_heap_morphism(f, src.heap, dst.heap, witness)) return false;
    for (Elem t = 0; t < src.truss.order(); ++t)
        for (Elem x = 0; x < src.heap.order; ++x)
            if (f[src.act(t, x)] != dst.act(t, f[x])) {
                if (witness)
                    *witness = cat("f(", t, ".", x, ") = ", f[src.act(t, x)], " but ", t, ".f(", x,
                                   ") = ", dst.act(t, f[x]));
                return false;
            }
    return true;
}

std::vector<Table1> module_morphisms(const FiniteTModule& src, const FiniteTModule& dst) {
    std::vector<Table1> out;
    for (auto& f : heap_morphisms(src.heap, dst.heap))
        if (is_module_morphism(f, src, dst)) out.push_back(f);
    return out;
}

bool is_tgroup_morphism(const Table1& f, const FiniteTGroup& src, const FiniteTGroup& dst) {
    if (!is_group_hom(f, src.group, dst.group)) return false;
    for (Elem t = 0; t < src.truss.order(); ++t)
        for (Elem x = 0; x < src.group.order; ++x)
            if (f[src.act(t, x)] != dst.act(t, f[x])) return false;
    return true;
}

std::vector<Table1> tgroup_morphisms(const FiniteTGroup& src, const FiniteTGroup& dst) {
    std::vector<Table1> out;
    for (auto& f : group_homs(src.group, dst.group))
        if (is_tgroup_morphism(f, src, dst)) out.push_back(f);
    return out;
}

}  // namespace finalg
