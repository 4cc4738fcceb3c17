#include "finalg/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "finalg/iso.hpp"

namespace finalg {

bool CanonicalForm::operator<(const CanonicalForm& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (orders != o.orders) return orders < o.orders;
    return tables < o.tables;
}

namespace {

CanonicalForm finish(CanonicalForm cf) {
    uint64_t h = fnv1a(cf.tables);
    for (int o : cf.orders) h = fnv1a({o}, h);
    for (char c : cf.kind) h = fnv1a({int(c)}, h);
    cf.hash = h;
    return cf;
}

// Slices a table with a leading |T| dimension into |T| tables over M.
std::vector<std::vector<Elem>> slice_leading(const std::vector<Elem>& t, int lead, size_t rest) {
    std::vector<std::vector<Elem>> out(lead);
    for (int i = 0; i < lead; ++i)
        out[i].assign(t.begin() + i * rest, t.begin() + (i + 1) * rest);
    return out;
}

}  // namespace

CanonicalForm canonical_form(const FiniteHeap& h) {
    CanonicalForm cf;
    cf.kind = "heap";
    cf.orders = {h.order};
    cf.tables = canonical_tables(h.order, {{3, &h.ternary}});
    return finish(std::move(cf));
}

CanonicalForm canonical_form(const FiniteTruss& t) {
    CanonicalForm cf;
    cf.kind = "truss";
    cf.orders = {t.order()};
    cf.tables = canonical_tables(t.order(), {{3, &t.heap.ternary}, {2, &t.mul}});
    return finish(std::move(cf));
}

CanonicalForm canonical_form(const FiniteTModule& m) {
    CanonicalForm cf;
    cf.kind = "module";
    cf.orders = {m.truss.order(), m.heap.order};
    auto slices = slice_leading(m.action, m.truss.order(), size_t(m.heap.order));
    std::vector<TableRef> refs = {{3, &m.heap.ternary}};
    for (auto& s : slices) refs.push_back({1, &s});
    cf.tables = canonical_tables(m.heap.order, refs);
    // the truss is part of the identity and is never relabeled
    cf.tables.insert(cf.tables.end(), m.truss.heap.ternary.begin(), m.truss.heap.ternary.end());
    cf.tables.insert(cf.tables.end(), m.truss.mul.begin(), m.truss.mul.end());
    return finish(std::move(cf));
}

CanonicalForm canonical_form(const FiniteHeapOfModules& hm) {
    CanonicalForm cf;
    cf.kind = "hmodule";
    cf.orders = {hm.torder(), hm.morder()};
    auto slices = slice_leading(hm.lambda, hm.torder(), size_t(hm.morder()) * hm.morder());
    std::vector<TableRef> refs = {{3, &hm.heap.ternary}};
    for (auto& s : slices) refs.push_back({2, &s});
    cf.tables = canonical_tables(hm.morder(), refs);
    cf.tables.insert(cf.tables.end(), hm.truss.heap.ternary.begin(),
                     hm.truss.heap.ternary.end());
    cf.tables.insert(cf.tables.end(), hm.truss.mul.begin(), hm.truss.mul.end());
    return finish(std::move(cf));
}

IsoResult are_isomorphic(const FiniteHeap& x, const FiniteHeap& y) {
    IsoResult r;
    if (x.order != y.order) return r;
    auto w = find_table_isomorphism(x.order, {{3, &x.ternary}}, {{3, &y.ternary}});
    r.isomorphic = w.has_value();
    r.witness = w;
    return r;
}

IsoResult are_isomorphic(const FiniteTruss& x, const FiniteTruss& y) {
    IsoResult r;
    if (x.order() != y.order()) return r;
    auto w = find_table_isomorphism(x.order(), {{3, &x.heap.ternary}, {2, &x.mul}},
                                    {{3, &y.heap.ternary}, {2, &y.mul}});
    r.isomorphic = w.has_value();
    r.witness = w;
    return r;
}

IsoResult are_isomorphic(const FiniteTModule& x, const FiniteTModule& y) {
    IsoResult r;
    if (!x.truss.same_tables(y.truss) || x.heap.order != y.heap.order) return r;
    auto sx = slice_leading(x.action, x.truss.order(), size_t(x.heap.order));
    auto sy = slice_leading(y.action, y.truss.order(), size_t(y.heap.order));
    std::vector<TableRef> rx = {{3, &x.heap.ternary}}, ry = {{3, &y.heap.ternary}};
    for (auto& s : sx) rx.push_back({1, &s});
    for (auto& s : sy) ry.push_back({1, &s});
    auto w = find_table_isomorphism(x.heap.order, rx, ry);
    r.isomorphic = w.has_value();
    r.witness = w;
    return r;
}

IsoResult are_isomorphic(const FiniteHeapOfModules& x, const FiniteHeapOfModules& y,
                         bool allow_truss_relabeling) {
    IsoResult r;
    if (x.morder() != y.morder()) return r;
    if (!allow_truss_relabeling) {
        if (!x.truss.same_tables(y.truss)) return r;
        auto sx = slice_leading(x.lambda, x.torder(), size_t(x.morder()) * x.morder());
        auto sy = slice_leading(y.lambda, y.torder(), size_t(y.morder()) * y.morder());
        std::vector<TableRef> rx = {{3, &x.heap.ternary}}, ry = {{3, &y.heap.ternary}};
        for (auto& s : sx) rx.push_back({2, &s});
        for (auto& s : sy) ry.push_back({2, &s});
        auto w = find_table_isomorphism(x.morder(), rx, ry);
        r.isomorphic = w.has_value();
        r.witness = w;
        return r;
    }
    // Coarser equivalence: also allow a truss isomorphism on the T side.
    if (x.torder() != y.torder()) return r;
    for (const Table1& tau : truss_morphisms(x.truss, y.truss)) {
        std::vector<char> seen(y.torder(), 0);
        bool bij = true;
        for (Elem v : tau) {
            if (seen[v]) {
                bij = false;
                break;
            }
            seen[v] = 1;
        }
        if (!bij) continue;
        FiniteHeapOfModules xt = x;
        xt.truss = y.truss;
        for (Elem t = 0; t < x.torder(); ++t)
            for (Elem m = 0; m < x.morder(); ++m)
                for (Elem n = 0; n < x.morder(); ++n)
                    xt.lambda[(size_t(tau[t]) * x.morder() + m) * x.morder() + n] =
                        x.lam(t, m, n);
        IsoResult fixed = are_isomorphic(xt, y, false);
        if (fixed.isomorphic) return fixed;
    }
    return r;
}

namespace {

void partitions_of(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
}

}  // namespace

std::vector<FiniteHeap> enumerate_abelian_heaps(int n) {
    std::vector<FiniteHeap> out;
    if (n < 0) throw StructuralError("enumerate_abelian_heaps: negative order");
    if (n == 0) {
        out.push_back(FiniteHeap{});
        return out;
    }
    std::vector<std::pair<int, int>> factors;
    int rest = n;
    for (int p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            factors.push_back({p, e});
        }
    if (rest > 1) factors.push_back({rest, 1});

    std::vector<std::vector<std::vector<int>>> choices(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) partitions_of(factors[i].second, choices[i]);

    std::vector<size_t> pick(factors.size(), 0);
    for (;;) {
        std::vector<int> moduli;
        for (size_t i = 0; i < factors.size(); ++i)
            for (int part : choices[i][pick[i]]) {
                int m = 1;
                for (int j = 0; j < part; ++j) m *= factors[i].first;
                moduli.push_back(m);
            }
        if (moduli.empty()) moduli.push_back(1);
        out.push_back(heap_from_group(group_from_cycles(moduli)));

        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (pick.empty() || i == pick.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const FiniteHeap& a, const FiniteHeap& b) {
        return canonical_form(a) < canonical_form(b);
    });
    return out;
}

namespace {

// Backtracking over mul tables for a fixed heap. The next cell is the
// unassigned one appearing in the most associativity triples whose other
// base cell is already assigned.
struct TrussSearch {
    const FiniteHeap& h;
    int n;
    Table2 mul;
    long long nodes = 0;
    long long budget;
    std::vector<Table2>& out;

    TrussSearch(const FiniteHeap& heap, long long budget, std::vector<Table2>& out)
        : h(heap), n(heap.order), mul(size_t(heap.order) * heap.order, -1), budget(budget),
          out(out) {}

    Elem get(Elem a, Elem b) const { return mul[size_t(a) * n + b]; }

    bool consistent() const {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                Elem ab = get(a, b);
                for (Elem c = 0; c < n; ++c) {
                    Elem bc = get(b, c);
                    Elem left = (ab >= 0) ? get(ab, c) : -1;
                    Elem right = (bc >= 0) ? get(a, bc) : -1;
                    if (left >= 0 && right >= 0 && left != right) return false;
                }
            }
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    for (Elem d = 0; d < n; ++d) {
                        Elem br = h.at(b, c, d);
                        Elem l1 = get(a, br), x = get(a, b), y = get(a, c), z = get(a, d);
                        if (l1 >= 0 && x >= 0 && y >= 0 && z >= 0 && l1 != h.at(x, y, z))
                            return false;
                        Elem r1 = get(br, a), u = get(b, a), v = get(c, a), w = get(d, a);
                        if (r1 >= 0 && u >= 0 && v >= 0 && w >= 0 && r1 != h.at(u, v, w))
                            return false;
                    }
        return true;
    }

    int pick_cell() const {
        int best = -1, best_score = -1;
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                if (get(a, b) >= 0) continue;
                int score = 0;
                for (Elem c = 0; c < n; ++c) {
                    if (get(b, c) >= 0) ++score;  // completes base of (a,b,c)
                    if (get(c, a) >= 0) ++score;  // completes base of (c,a,b)
                }
                if (score > best_score) {
                    best_score = score;
                    best = int(size_t(a) * n + b);
                }
            }
        return best;
    }

    void run(int assigned) {
        if (++nodes > budget) throw ResourceError("enumerate_trusses: node budget exceeded");
        if (assigned == n * n) {
            out.push_back(mul);
            return;
        }
        int cell = pick_cell();
        for (Elem v = 0; v < n; ++v) {
            mul[cell] = v;
            if (consistent()) run(assigned + 1);
        }
        mul[cell] = -1;
    }
};

template <class T>
std::vector<T> dedupe_by_canonical(std::vector<T> items) {
    std::map<CanonicalForm, T> seen;
    for (auto& it : items) {
        CanonicalForm cf = canonical_form(it);
        if (!seen.count(cf)) seen.emplace(std::move(cf), std::move(it));
    }
    std::vector<T> out;
    for (auto& [cf, v] : seen) out.push_back(std::move(v));
    return out;
}

template <class T>
void sort_by_canonical(std::vector<T>& items) {
    std::sort(items.begin(), items.end(),
              [](const T& a, const T& b) { return canonical_form(a) < canonical_form(b); });
}

}  // namespace

std::vector<FiniteTruss> enumerate_trusses(int n, bool up_to_iso, long long node_budget) {
    std::vector<FiniteTruss> out;
    if (n == 0) {
        out.push_back(FiniteTruss{});  // the empty truss
        return out;
    }
    for (const FiniteHeap& h : enumerate_abelian_heaps(n)) {
        std::vector<Table2> tables;
        TrussSearch search(h, node_budget, tables);
        search.run(0);
        for (Table2& mul : tables) {
            FiniteTruss t;
            t.heap = h;
            t.mul = std::move(mul);
            ValidationReport rep = validate_truss(t);
            if (!rep.valid())
                throw ContractViolation("enumerate_trusses: search produced an invalid table");
            out.push_back(std::move(t));
        }
    }
    if (up_to_iso) out = dedupe_by_canonical(std::move(out));
    sort_by_canonical(out);
    return out;
}

namespace {

// Cell-by-cell search over action tables |T| x n -> n with a caller
// supplied partial-consistency predicate (-1 marks unset cells).
struct ActionSearch {
    int nt, n;
    Table2 action;
    long long nodes = 0;
    long long budget;
    std::vector<Table2>& out;
    std::function<bool(const Table2&)> consistent;

    ActionSearch(int nt, int n, long long budget, std::vector<Table2>& out)
        : nt(nt), n(n), action(size_t(nt) * n, -1), budget(budget), out(out) {}

    void run(int idx) {
        if (++nodes > budget) throw ResourceError("action search: node budget exceeded");
        if (idx == nt * n) {
            out.push_back(action);
            return;
        }
        for (Elem v = 0; v < n; ++v) {
            action[idx] = v;
            if (consistent(action)) run(idx + 1);
        }
        action[idx] = -1;
    }
};

}  // namespace

std::vector<FiniteTModule> enumerate_modules(const FiniteTruss& t, int m_order, bool up_to_iso,
                                             long long node_budget) {
    std::vector<FiniteTModule> out;
    const int nt = t.order();
    for (const FiniteHeap& m : enumerate_abelian_heaps(m_order)) {
        if (m.order == 0) {
            FiniteTModule empty;
            empty.truss = t;
            out.push_back(std::move(empty));
            continue;
        }
        const int nm = m.order;
        std::vector<Table2> tables;
        ActionSearch search(nt, nm, node_budget, tables);
        auto get = [nm](const Table2& a, Elem s, Elem x) { return a[size_t(s) * nm + x]; };
        search.consistent = [&t, &m, get, nm, nt](const Table2& a) {
            for (Elem s = 0; s < nt; ++s)
                for (Elem u = 0; u < nt; ++u) {
                    Elem su = t.times(s, u);
                    for (Elem x = 0; x < nm; ++x) {
                        Elem ux = get(a, u, x);
                        Elem lhs = (ux >= 0) ? get(a, s, ux) : -1;
                        Elem rhs = get(a, su, x);
                        if (lhs >= 0 && rhs >= 0 && lhs != rhs) return false;
                    }
                }
            for (Elem s = 0; s < nt; ++s)
                for (Elem u = 0; u < nt; ++u)
                    for (Elem v = 0; v < nt; ++v) {
                        Elem br = t.bracket(s, u, v);
                        for (Elem x = 0; x < nm; ++x) {
                            Elem l = get(a, br, x), p = get(a, s, x), q = get(a, u, x),
                                 r = get(a, v, x);
                            if (l >= 0 && p >= 0 && q >= 0 && r >= 0 && l != m.at(p, q, r))
                                return false;
                        }
                    }
            for (Elem s = 0; s < nt; ++s)
                for (Elem x = 0; x < nm; ++x)
                    for (Elem y = 0; y < nm; ++y)
                        for (Elem z = 0; z < nm; ++z) {
                            Elem l = get(a, s, m.at(x, y, z));
                            Elem p = get(a, s, x), q = get(a, s, y), r = get(a, s, z);
                            if (l >= 0 && p >= 0 && q >= 0 && r >= 0 && l != m.at(p, q, r))
                                return false;
                        }
            return true;
        };
        search.run(0);
        for (Table2& a : tables) {
            FiniteTModule mod;
            mod.truss = t;
            mod.heap = m;
            mod.action = std::move(a);
            if (!validate_module(mod).valid())
                throw ContractViolation("enumerate_modules: search produced an invalid table");
            out.push_back(std::move(mod));
        }
    }
    if (up_to_iso) out = dedupe_by_canonical(std::move(out));
    sort_by_canonical(out);
    return out;
}

std::vector<FiniteTGroup> enumerate_tgroups(const FiniteTruss& t, int g_order,
                                            long long node_budget) {
    std::vector<FiniteTGroup> out;
    if (g_order <= 0) return out;
    const int nt = t.order();
    for (const FiniteHeap& h : enumerate_abelian_heaps(g_order)) {
        FiniteAbelianGroup g = retract(h, 0);
        const int ng = g.order;
        std::vector<Table2> tables;
        ActionSearch search(nt, ng, node_budget, tables);
        auto get = [ng](const Table2& a, Elem s, Elem x) { return a[size_t(s) * ng + x]; };
        search.consistent = [&t, g, get, ng, nt](const Table2& a) {
            for (Elem s = 0; s < nt; ++s)
                for (Elem u = 0; u < nt; ++u) {
                    Elem su = t.times(s, u);
                    for (Elem x = 0; x < ng; ++x) {
                        Elem ux = get(a, u, x);
                        Elem lhs = (ux >= 0) ? get(a, s, ux) : -1;
                        Elem rhs = get(a, su, x);
                        if (lhs >= 0 && rhs >= 0 && lhs != rhs) return false;
                    }
                }
            for (Elem s = 0; s < nt; ++s)
                for (Elem u = 0; u < nt; ++u)
                    for (Elem v = 0; v < nt; ++v) {
                        Elem br = t.bracket(s, u, v);
                        for (Elem x = 0; x < ng; ++x) {
                            Elem l = get(a, br, x), p = get(a, s, x), q = get(a, u, x),
                                 r = get(a, v, x);
                            if (l >= 0 && p >= 0 && q >= 0 && r >= 0 &&
                                l != g.at(g.sub(p, q), r))
                                return false;
                        }
                    }
            for (Elem s = 0; s < nt; ++s)
                for (Elem x = 0; x < ng; ++x)
                    for (Elem y = 0; y < ng; ++y) {
                        Elem l = get(a, s, g.at(x, y));
                        Elem p = get(a, s, x), q = get(a, s, y);
                        if (l >= 0 && p >= 0 && q >= 0 && l != g.at(p, q)) return false;
                    }
            return true;
        };
        search.run(0);
        for (Table2& a : tables) {
            FiniteTGroup tg;
            tg.group = g;
            tg.truss = t;
            tg.action = std::move(a);
            if (!validate_tgroup(tg).valid())
                throw ContractViolation("enumerate_tgroups: search produced an invalid table");
            out.push_back(std::move(tg));
        }
    }
    return out;
}

std::vector<FiniteHeapOfModules> enumerate_hmodules(const FiniteTruss& t, int m_order,
                                                    bool up_to_iso, long long node_budget) {
    std::vector<FiniteHeapOfModules> out;
    if (m_order == 0) {
        FiniteHeapOfModules empty;
        empty.truss = t;
        out.push_back(std::move(empty));
        return out;
    }
    // Every heap of modules arises from a T-group action via the
    // induced-action table; distinct actions can induce equal tables.
    std::map<std::pair<std::vector<Elem>, std::vector<Elem>>, char> literal;
    for (FiniteTGroup& tg : enumerate_tgroups(t, m_order, node_budget)) {
        FiniteHeapOfModules hm = from_module(tgroup_to_module(tg));
        auto key = std::make_pair(hm.heap.ternary, hm.lambda);
        if (!literal.count(key)) {
            literal.emplace(std::move(key), 1);
            out.push_back(std::move(hm));
        }
    }
    if (up_to_iso) out = dedupe_by_canonical(std::move(out));
    sort_by_canonical(out);
    return out;
}

namespace {

template <class T>
std::vector<Labeled<T>> label_all(std::vector<T> items) {
    std::vector<Labeled<T>> out;
    for (auto& it : items) {
        CanonicalForm cf = canonical_form(it);
        std::string orders;
        for (size_t i = 0; i < cf.orders.size(); ++i)
            orders += (i ? "x" : "") + std::to_string(cf.orders[i]);
        out.push_back({std::move(it), cf.kind + "-" + orders + "-" + hex16(cf.hash)});
    }
    return out;
}

}  // namespace

Corpus corpus_generate(const CorpusLimits& limits, int jobs) {
    Corpus corpus;
    corpus.limits = limits;

    for (int n = 0; n <= limits.heap_max; ++n)
        for (auto& l : label_all(enumerate_abelian_heaps(n))) corpus.heaps.push_back(l);

    std::vector<FiniteTruss> all_trusses;
    for (int n = 1; n <= limits.truss_max; ++n)
        for (auto& t : enumerate_trusses(n, true)) all_trusses.push_back(t);
    for (auto& l : label_all(all_trusses)) corpus.trusses.push_back(l);

    struct Task {
        enum Kind { Module, HModule } kind;
        const FiniteTruss* truss;
        int m_order;
    };
    std::vector<Task> tasks;
    for (const auto& lt : corpus.trusses) {
        if (lt.value.order() <= limits.module_t_max)
            for (int m = 0; m <= limits.module_m_max; ++m)
                tasks.push_back({Task::Module, &lt.value, m});
        if (lt.value.order() <= limits.hmodule_t_max)
            for (int m = 0; m <= limits.hmodule_m_max; ++m)
                tasks.push_back({Task::HModule, &lt.value, m});
    }

    // results land in task order, so scheduling cannot affect the output
    std::vector<std::vector<Labeled<FiniteTModule>>> mod_results(tasks.size());
    std::vector<std::vector<Labeled<FiniteHeapOfModules>>> hmod_results(tasks.size());
    auto run_task = [&](size_t i) {
        const Task& task = tasks[i];
        if (task.kind == Task::Module)
            mod_results[i] = label_all(enumerate_modules(*task.truss, task.m_order, true));
        else
            hmod_results[i] = label_all(enumerate_hmodules(*task.truss, task.m_order, true));
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < tasks.size(); ++i) {
        for (auto& l : mod_results[i]) corpus.modules.push_back(std::move(l));
        for (auto& l : hmod_results[i]) corpus.hmodules.push_back(std::move(l));
    }
    return corpus;
}

}  // namespace finalg
