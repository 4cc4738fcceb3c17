#include "finalg/group.hpp"

#include <algorithm>

namespace finalg {

Elem FiniteAbelianGroup::times(long long r, Elem x) const {
    Elem base = x;
    if (r < 0) {
        base = neg[x];
        r = -r;
    }
    Elem acc = zero;
    while (r-- > 0) acc = at(acc, base);
    return acc;
}

FiniteAbelianGroup group_from_add_table(int order, Table2 add) {
    if (order < 0) throw StructuralError("group: negative order");
    check_table(add, size_t(order) * order, order, "group add table");
    FiniteAbelianGroup g;
    g.order = order;
    g.add = std::move(add);
    if (order == 0) return g;

    // Locate the neutral element.
    Elem zero = -1;
    for (Elem e = 0; e < order && zero < 0; ++e) {
        bool ok = true;
        for (Elem x = 0; x < order && ok; ++x)
            ok = g.at(e, x) == x && g.at(x, e) == x;
        if (ok) zero = e;
    }
    if (zero < 0) throw StructuralError("group: no neutral element");
    g.zero = zero;

    g.neg.assign(order, -1);
    for (Elem x = 0; x < order; ++x) {
        for (Elem y = 0; y < order; ++y)
            if (g.at(x, y) == zero && g.at(y, x) == zero) {
                g.neg[x] = y;
                break;
            }
        if (g.neg[x] < 0) throw StructuralError(cat("group: element ", x, " has no inverse"));
    }
    return g;
}

FiniteAbelianGroup cyclic_group(int n) { return group_from_cycles({n}); }

FiniteAbelianGroup group_from_cycles(const std::vector<int>& moduli) {
    long long n = 1;
    for (int m : moduli) {
        if (m < 1) throw StructuralError("group_from_cycles: modulus must be >= 1");
        n *= m;
    }
    int order = int(n);
    Table2 add(size_t(order) * order);
    auto decode = [&](Elem x, std::vector<int>& digits) {
        for (size_t i = moduli.size(); i-- > 0;) {
            digits[i] = x % moduli[i];
            x /= moduli[i];
        }
    };
    std::vector<int> da(moduli.size()), db(moduli.size());
    for (Elem a = 0; a < order; ++a) {
        decode(a, da);
        for (Elem b = 0; b < order; ++b) {
            decode(b, db);
            Elem s = 0;
            for (size_t i = 0; i < moduli.size(); ++i)
                s = s * moduli[i] + (da[i] + db[i]) % moduli[i];
            add[size_t(a) * order + b] = s;
        }
    }
    return group_from_add_table(order, std::move(add));
}

ValidationReport validate_group(const FiniteAbelianGroup& g) {
    ValidationReport rep;
    const int n = g.order;
    if (n < 0 || g.add.size() != size_t(n) * n || (n > 0 && g.neg.size() != size_t(n))) {
        rep.structural_ok = false;
        rep.structural_message = "group: table sizes do not match order";
        return rep;
    }
    for (Elem v : g.add)
        if (!in_range(v, n)) {
            rep.structural_ok = false;
            rep.structural_message = cat("group: add entry ", v, " out of range");
            return rep;
        }

    bool pass = true;
    std::string w;
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            for (Elem c = 0; c < n && pass; ++c)
                if (g.at(g.at(a, b), c) != g.at(a, g.at(b, c))) {
                    pass = false;
                    w = cat("(", a, "+", b, ")+", c, " = ", g.at(g.at(a, b), c), " but ", a, "+(",
                            b, "+", c, ") = ", g.at(a, g.at(b, c)));
                }
    rep.add("associativity", pass, w);

    pass = true;
    w.clear();
    for (Elem a = 0; a < n && pass; ++a)
        for (Elem b = 0; b < n && pass; ++b)
            if (g.at(a, b) != g.at(b, a)) {
                pass = false;
                w = cat(a, "+", b, " = ", g.at(a, b), " but ", b, "+", a, " = ", g.at(b, a));
            }
    rep.add("commutativity", pass, w);

    pass = n == 0 || in_range(g.zero, n);
    w.clear();
    for (Elem x = 0; pass && x < n; ++x)
        if (g.at(g.zero, x) != x || g.at(x, g.zero) != x) {
            pass = false;
            w = cat("zero ", g.zero, " is not neutral at ", x);
        }
    rep.add("identity", pass, w);

    pass = true;
    w.clear();
    for (Elem x = 0; pass && x < n; ++x) {
        if (!in_range(g.neg[x], n) || g.at(x, g.neg[x]) != g.zero) {
            pass = false;
            w = cat("neg(", x, ") = ", g.neg[x], " is not an inverse");
        }
    }
    rep.add("inverses", pass, w);
    return rep;
}

int element_order(const FiniteAbelianGroup& g, Elem x) {
    Elem acc = x;
    int r = 1;
    while (acc != g.zero) {
        acc = g.at(acc, x);
        ++r;
    }
    return r;
}

bool is_group_hom(const Table1& f, const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst) {
    if (f.size() != size_t(src.order)) return false;
    for (Elem v : f)
        if (!in_range(v, dst.order)) return false;
    for (Elem a = 0; a < src.order; ++a)
        for (Elem b = 0; b < src.order; ++b)
            if (f[src.at(a, b)] != dst.at(f[a], f[b])) return false;
    return true;
}

namespace {

// Greedy generating sequence: repeatedly adjoin the smallest element
// outside the current span.
std::vector<Elem> generating_sequence(const FiniteAbelianGroup& g, std::vector<Elem>& span) {
    std::vector<Elem> gens;
    std::vector<char> in_span(g.order, 0);
    span = {g.zero};
    in_span[g.zero] = 1;
    while (int(span.size()) < g.order) {
        Elem pick = -1;
        for (Elem x = 0; x < g.order; ++x)
            if (!in_span[x]) {
                pick = x;
                break;
            }
        gens.push_back(pick);
        // close span under addition of pick
        std::vector<Elem> next = span;
        for (Elem s : span) {
            Elem acc = s;
            for (;;) {
                acc = g.at(acc, pick);
                if (in_span[acc]) break;
                in_span[acc] = 1;
                next.push_back(acc);
                // keep walking multiples until we wrap into the span
            }
        }
        std::sort(next.begin(), next.end());
        span = std::move(next);
    }
    return gens;
}

}  // namespace

std::vector<Table1> group_homs(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst) {
    std::vector<Table1> out;
    if (src.order == 0) {
        out.push_back({});
        return out;
    }
    if (dst.order == 0) return out;  // no map from a non-empty set

    std::vector<Elem> span;
    std::vector<Elem> gens = generating_sequence(src, span);

    // Candidate images per generator: order of image must divide the
    // generator's order.
    std::vector<std::vector<Elem>> candidates(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        int d = element_order(src, gens[i]);
        for (Elem h = 0; h < dst.order; ++h)
            if (dst.times(d, h) == dst.zero) candidates[i].push_back(h);
    }

    Table1 f(src.order, -1);
    std::vector<Elem> chosen(gens.size(), -1);

    // Propagate the candidate map from generator images by closure from zero;
    // final full additivity verification filters out any ill-defined choice.
    auto build_and_check = [&]() {
        std::fill(f.begin(), f.end(), -1);
        f[src.zero] = dst.zero;
        bool changed = true;
        while (changed) {
            changed = false;
            for (Elem x = 0; x < src.order; ++x) {
                if (f[x] < 0) continue;
                for (size_t i = 0; i < gens.size(); ++i) {
                    Elem y = src.at(x, gens[i]);
                    Elem fy = dst.at(f[x], chosen[i]);
                    if (f[y] < 0) {
                        f[y] = fy;
                        changed = true;
                    } else if (f[y] != fy) {
                        return false;
                    }
                }
            }
        }
        for (Elem v : f)
            if (v < 0) return false;
        return is_group_hom(f, src, dst);
    };

    // Depth-first over generator image tuples, lexicographic.
    std::vector<size_t> idx(gens.size(), 0);
    size_t depth = 0;
    if (gens.empty()) {
        if (build_and_check()) out.push_back(f);
        return out;
    }
    for (;;) {
        if (idx[depth] == candidates[depth].size()) {
            if (depth == 0) break;
            idx[depth] = 0;
            --depth;
            ++idx[depth];
            continue;
        }
        chosen[depth] = candidates[depth][idx[depth]];
        if (depth + 1 < gens.size()) {
            ++depth;
        } else {
            if (build_and_check()) out.push_back(f);
            ++idx[depth];
        }
    }
    return out;
}

std::vector<Table1> group_isos(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst) {
    std::vector<Table1> out;
    if (src.order != dst.order) return out;
    for (auto& f : group_homs(src, dst)) {
        std::vector<char> seen(dst.order, 0);
        bool bij = true;
        for (Elem v : f) {
            if (seen[v]) {
                bij = false;
                break;
            }
            seen[v] = 1;
        }
        if (bij) out.push_back(f);
    }
    return out;
}

bool is_subgroup(const FiniteAbelianGroup& g, const ElemSet& s) {
    if (s.empty()) return false;
    for (Elem a : s.members())
        for (Elem b : s.members())
            if (!s.contains(g.sub(a, b))) return false;
    return true;
}

}  // namespace finalg
