#include "finalg/heap.hpp"

#include <algorithm>
#include <map>

namespace finalg {

ValidationReport validate_heap(const FiniteHeap& h) {
    ValidationReport rep;
    const int n = h.order;
    if (n < 0 || h.ternary.size() != size_t(n) * n * n) {
        rep.structural_ok = false;
        rep.structural_message =
            cat("heap: table has ", h.ternary.size(), " entries, expected ", size_t(n) * n * n);
        return rep;
    }
    for (Elem v : h.ternary)
        if (!in_range(v, n)) {
            rep.structural_ok = false;
            rep.structural_message = cat("heap: entry ", v, " out of range [0,", n, ")");
            return rep;
        }

    bool pass = true;
    std::string w;
    // Mal'cev: [a,b,b] = a = [b,b,a]
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b) {
            if (h.at(a, b, b) != a) {
                pass = false;
                w = cat("[", a, ",", b, ",", b, "] = ", h.at(a, b, b), ", expected ", a);
            } else if (h.at(b, b, a) != a) {
                pass = false;
                w = cat("[", b, ",", b, ",", a, "] = ", h.at(b, b, a), ", expected ", a);
            }
        }
    rep.add("malcev", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (h.at(a, b, c) != h.at(c, b, a)) {
                    pass = false;
                    w = cat("[", a, ",", b, ",", c, "] = ", h.at(a, b, c), " but [", c, ",", b, ",",
                            a, "] = ", h.at(c, b, a));
                }
    rep.add("abelian", pass, w);

    pass = true;
    w.clear();
    if (n <= 12) {
        for (Elem a = 0; a < n && pass; ++a)
            for (Elem b = 0; b < n && pass; ++b)
                for (Elem c = 0; c < n && pass; ++c)
                    for (Elem d = 0; d < n && pass; ++d)
                        for (Elem e = 0; e < n && pass; ++e)
                            if (h.at(a, b, h.at(c, d, e)) != h.at(h.at(a, b, c), d, e)) {
                                pass = false;
                                w = cat("[", a, ",", b, ",[", c, ",", d, ",", e, "]] = ",
                                        h.at(a, b, h.at(c, d, e)), " but [[", a, ",", b, ",", c,
                                        "],", d, ",", e, "] = ", h.at(h.at(a, b, c), d, e));
                            }
    } else {
        // Retract reduction: with Mal'cev and abelianity in hand, the table
        // is a valid heap iff add(x,y) = [x,0,y] is an abelian group with
        // neutral 0, inverse [0,x,0], and [a,b,c] = a - b + c throughout.
        // O(n^3) instead of n^5.
        const AxiomResult* malcev = rep.find("malcev");
        const AxiomResult* abelian = rep.find("abelian");
        if (malcev && malcev->pass && abelian && abelian->pass) {
            auto add = [&](Elem x, Elem y) { return h.at(x, 0, y); };
            auto neg = [&](Elem x) { return h.at(0, x, 0); };
            for (Elem a = 0; a < n && pass; ++a)
                for (Elem b = 0; b < n && pass; ++b)
                    for (Elem c = 0; c < n && pass; ++c)
                        if (add(add(a, b), c) != add(a, add(b, c))) {
                            pass = false;
                            w = cat("retract addition not associative at (", a, ",", b, ",", c,
                                    ")");
                        }
            for (Elem x = 0; x < n && pass; ++x)
                if (add(x, neg(x)) != 0) {
                    pass = false;
                    w = cat("retract element ", x, " has no inverse");
                }
            for (Elem a = 0; a < n && pass; ++a)
                for (Elem b = 0; b < n && pass; ++b) {
                    Elem amb = add(a, neg(b));
                    for (Elem c = 0; c < n && pass; ++c)
                        if (h.at(a, b, c) != add(amb, c)) {
                            pass = false;
                            w = cat("[", a, ",", b, ",", c, "] = ", h.at(a, b, c),
                                    " differs from a-b+c = ", add(amb, c), " in the 0-retract");
                        }
                }
        } else {
            pass = false;
            w = "not checked: Mal'cev or abelian axiom already fails";
        }
    }
    rep.add("associativity", pass, w);
    return rep;
}

FiniteHeap heap_from_group(const FiniteAbelianGroup& g) {
    ValidationReport rep = validate_group(g);
    if (!rep.valid()) throw MathError(cat("heap_from_group: invalid group\n", rep.to_string()));
    FiniteHeap h;
    h.order = g.order;
    h.ternary.resize(size_t(g.order) * g.order * g.order);
    for (Elem a = 0; a < g.order; ++a)
        for (Elem b = 0; b < g.order; ++b) {
            Elem ab = g.sub(a, b);
            for (Elem c = 0; c < g.order; ++c)
                h.ternary[(size_t(a) * g.order + b) * g.order + c] = g.at(ab, c);
        }
    return h;
}

FiniteAbelianGroup retract(const FiniteHeap& h, Elem e) {
    if (h.order == 0) throw MathError("retract: the empty heap has no retract");
    if (!in_range(e, h.order)) throw StructuralError(cat("retract: basepoint ", e, " out of range"));
    FiniteAbelianGroup g;
    g.order = h.order;
    g.zero = e;
    g.add.resize(size_t(h.order) * h.order);
    g.neg.resize(h.order);
    for (Elem x = 0; x < h.order; ++x) {
        for (Elem y = 0; y < h.order; ++y) g.add[size_t(x) * h.order + y] = h.at(x, e, y);
        g.neg[x] = h.at(e, x, e);
    }
    return g;
}

Translation translation(const FiniteHeap& h, Elem a, Elem b) {
    if (!in_range(a, h.order) || !in_range(b, h.order))
        throw StructuralError("translation: index out of range");
    Translation t;
    t.order = h.order;
    t.a = a;
    t.b = b;
    t.perm.resize(h.order);
    for (Elem x = 0; x < h.order; ++x) t.perm[x] = h.at(x, a, b);
    return t;
}

TranslationGroup translation_group(const FiniteHeap& h) {
    if (h.order == 0) throw MathError("translation_group: empty heap");
    const int n = h.order;
    TranslationGroup tg;
    tg.tau_index.assign(size_t(n) * n, -1);
    std::map<Table1, int> index_of;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            Table1 p(n);
            for (Elem x = 0; x < n; ++x) p[x] = h.at(x, a, b);
            auto it = index_of.find(p);
            int idx;
            if (it == index_of.end()) {
                idx = int(tg.perms.size());
                index_of.emplace(p, idx);
                tg.perms.push_back(std::move(p));
            } else {
                idx = it->second;
            }
            tg.tau_index[size_t(a) * n + b] = idx;
        }

    const int m = int(tg.perms.size());
    Table2 add(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Table1 comp(n);
            for (Elem x = 0; x < n; ++x) comp[x] = tg.perms[i][tg.perms[j][x]];
            auto it = index_of.find(comp);
            if (it == index_of.end())
                throw ContractViolation("translation_group: composition left the set");
            add[size_t(i) * m + j] = it->second;
        }
    tg.group = group_from_add_table(m, std::move(add));
    ValidationReport rep = validate_group(tg.group);
    if (!rep.valid())
        throw ContractViolation(cat("translation_group: not a group\n", rep.to_string()));
    return tg;
}

bool is_subheap(const FiniteHeap& h, const ElemSet& s, std::string* witness) {
    for (Elem a : s.members())
        for (Elem b : s.members())
            for (Elem c : s.members())
                if (!s.contains(h.at(a, b, c))) {
                    if (witness)
                        *witness = cat("[", a, ",", b, ",", c, "] = ", h.at(a, b, c),
                                       " escapes the subset");
                    return false;
                }
    return true;
}

HeapQuotient subheap_relation(const FiniteHeap& h, const ElemSet& s) {
    if (s.empty()) throw MathError("subheap_relation: subset is empty");
    std::string w;
    if (!is_subheap(h, s, &w)) throw MathError(cat("subheap_relation: not a sub-heap: ", w));

    const int n = h.order;
    auto related = [&](Elem x, Elem y) {
        for (Elem t : s.members())
            if (!s.contains(h.at(x, y, t))) return false;
        return true;
    };

    HeapQuotient q;
    q.class_of.assign(n, -1);
    for (Elem x = 0; x < n; ++x) {
        if (q.class_of[x] >= 0) continue;
        int id = int(q.classes.size());
        q.classes.push_back({});
        for (Elem y = x; y < n; ++y)
            if (q.class_of[y] < 0 && related(x, y)) {
                q.class_of[y] = id;
                q.classes[id].push_back(y);
            }
    }

    const int m = int(q.classes.size());
    q.quotient.order = m;
    q.quotient.ternary.assign(size_t(m) * m * m, -1);
    // Fill from all representatives; disagreement means the relation is
    // not a congruence, which cannot happen over a valid abelian heap.
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                size_t idx = (size_t(q.class_of[a]) * m + q.class_of[b]) * m + q.class_of[c];
                int val = q.class_of[h.at(a, b, c)];
                if (q.quotient.ternary[idx] < 0)
                    q.quotient.ternary[idx] = val;
                else if (q.quotient.ternary[idx] != val)
                    throw ContractViolation(
                        cat("subheap_relation: quotient ill-defined at classes of (", a, ",", b,
                            ",", c, ")"));
            }
    ValidationReport rep = validate_heap(q.quotient);
    if (!rep.valid())
        throw ContractViolation(cat("subheap_relation: quotient invalid\n", rep.to_string()));
    return q;
}

bool is_heap_morphism(const Table1& f, const FiniteHeap& src, const FiniteHeap& dst,
                      std::string* witness) {
    if (f.size() != size_t(src.order))
        throw StructuralError(cat("is_heap_morphism: map has ", f.size(), " values, expected ",
                                  src.order));
    for (Elem v : f)
        if (!in_range(v, dst.order))
            throw StructuralError(cat("is_heap_morphism: value ", v, " out of range"));
    for (Elem a = 0; a < src.order; ++a)
        for (Elem b = 0; b < src.order; ++b)
            for (Elem c = 0; c < src.order; ++c)
                if (f[src.at(a, b, c)] != dst.at(f[a], f[b], f[c])) {
                    if (witness)
                        *witness = cat("f([", a, ",", b, ",", c, "]) = ", f[src.at(a, b, c)],
                                       " but [f", a, ",f", b, ",f", c, "] = ",
                                       dst.at(f[a], f[b], f[c]));
                    return false;
                }
    return true;
}

bool coset_test(const FiniteAbelianGroup& g, const ElemSet& s) {
    // Route 1: closure under x - y + z.
    bool closed = !s.empty();
    for (Elem x : s.members()) {
        if (!closed) break;
        for (Elem y : s.members()) {
            if (!closed) break;
            for (Elem z : s.members())
                if (!s.contains(g.at(g.sub(x, y), z))) {
                    closed = false;
                    break;
                }
        }
    }

    // Route 2: S = g0 + G' for a subgroup G'.
    bool coset = false;
    if (!s.empty()) {
        Elem g0 = s.members().front();
        ElemSet diff(g.order);
        for (Elem x : s.members()) diff.insert(g.sub(x, g0));
        coset = is_subgroup(g, diff);
    }

    if (closed != coset)
        throw ContractViolation("coset_test: the two characterisations disagree");
    return closed;
}

std::vector<Table1> heap_morphisms(const FiniteHeap& src, const FiniteHeap& dst) {
    std::vector<Table1> out;
    if (src.order == 0) {
        out.push_back({});
        return out;
    }
    if (dst.order == 0) return out;
    FiniteAbelianGroup gs = retract(src, 0);
    FiniteAbelianGroup gd = retract(dst, 0);
    // f(x) = [F(x), 0', b] with F additive and b = f(0) arbitrary.
    for (const Table1& F : group_homs(gs, gd))
        for (Elem b = 0; b < dst.order; ++b) {
            Table1 f(src.order);
            for (Elem x = 0; x < src.order; ++x) f[x] = dst.at(F[x], 0, b);
            out.push_back(std::move(f));
        }
    return out;
}

}  // namespace finalg
