#include "finalg/ybe.hpp"

#include <algorithm>
#include <functional>

namespace finalg {

BinaryStructure classify_binary(const Table2& op, int order) {
    check_table(op, size_t(order) * order, order, "binary operation table");
    BinaryStructure b;
    b.order = order;
    b.op = op;
    const int n = order;

    bool shelf = true;
    for (Elem x = 0; x < n && shelf; ++x)
        for (Elem y = 0; y < n && shelf; ++y)
            for (Elem z = 0; z < n && shelf; ++z) {
                Elem lhs = b.at(x, b.at(y, z));
                Elem rhs = b.at(b.at(x, y), b.at(x, z));
                if (lhs != rhs) {
                    shelf = false;
                    b.shelf_witness = cat(x, "*(", y, "*", z, ") = ", lhs, " but (", x, "*", y,
                                          ")*(", x, "*", z, ") = ", rhs);
                }
            }

    bool idem = true;
    for (Elem x = 0; x < n && idem; ++x)
        if (b.at(x, x) != x) {
            idem = false;
            b.idem_witness = cat(x, "*", x, " = ", b.at(x, x));
        }

    // Unique left division: every row z -> x*z is a bijection.
    bool division = true;
    Table2 div(size_t(n) * n, -1);
    for (Elem x = 0; x < n && division; ++x) {
        std::vector<char> seen(n, 0);
        for (Elem z = 0; z < n; ++z) {
            Elem y = b.at(x, z);
            if (seen[y]) {
                division = false;
                b.division_witness = cat("row ", x, " repeats value ", y);
                break;
            }
            seen[y] = 1;
            div[size_t(x) * n + y] = z;  // x \ y = z
        }
    }
    if (division) b.division = std::move(div);

    bool entropic = true;
    for (Elem x = 0; x < n && entropic; ++x)
        for (Elem y = 0; y < n && entropic; ++y)
            for (Elem z = 0; z < n && entropic; ++z)
                for (Elem v = 0; v < n && entropic; ++v) {
                    Elem lhs = b.at(b.at(x, y), b.at(z, v));
                    Elem rhs = b.at(b.at(x, z), b.at(y, v));
                    if (lhs != rhs) {
                        entropic = false;
                        b.entropic_witness = cat("(", x, "*", y, ")*(", z, "*", v, ") = ", lhs,
                                                 " but (", x, "*", z, ")*(", y, "*", v,
                                                 ") = ", rhs);
                    }
                }

    b.flags.shelf = shelf;
    b.flags.spindle = shelf && idem;
    b.flags.rack = shelf && division;
    b.flags.quandle = shelf && idem && division;
    b.flags.entropic = entropic;

    // Idempotent entropic tables are self-distributive on both sides.
    if (idem && entropic) {
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y)
                for (Elem z = 0; z < n; ++z) {
                    if (b.at(x, b.at(y, z)) != b.at(b.at(x, y), b.at(x, z)))
                        throw ContractViolation(
                            "classify_binary: idempotent entropic but not left distributive");
                    if (b.at(b.at(x, y), z) != b.at(b.at(x, z), b.at(y, z)))
                        throw ContractViolation(
                            "classify_binary: idempotent entropic but not right distributive");
                }
    }
    return b;
}

bool check_ybe(const YbePairMap& r, std::string* witness) {
    const int n = r.order;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z) {
                // LHS: (r x id) o (id x r) o (r x id)
                Elem a1 = r.first(x, y), a2 = r.second(x, y), a3 = z;
                Elem b2 = r.first(a2, a3), b3 = r.second(a2, a3);
                Elem c1 = r.first(a1, b2), c2 = r.second(a1, b2);
                Elem l1 = c1, l2 = c2, l3 = b3;
                // RHS: (id x r) o (r x id) o (id x r)
                Elem d2 = r.first(y, z), d3 = r.second(y, z);
                Elem e1 = r.first(x, d2), e2 = r.second(x, d2);
                Elem f2 = r.first(e2, d3), f3 = r.second(e2, d3);
                Elem r1v = e1, r2v = f2, r3v = f3;
                if (l1 != r1v || l2 != r2v || l3 != r3v) {
                    if (witness)
                        *witness = cat("braid relation fails on (", x, ",", y, ",", z, "): (", l1,
                                       ",", l2, ",", l3, ") vs (", r1v, ",", r2v, ",", r3v, ")");
                    return false;
                }
            }
    return true;
}

BinaryStructure spindle_from_hmodule(const FiniteHeapOfModules& hm, Elem u) {
    if (!in_range(u, hm.torder())) throw StructuralError("spindle_from_hmodule: u out of range");
    const int n = hm.morder();
    Table2 op(size_t(n) * n);
    for (Elem m = 0; m < n; ++m)
        for (Elem x = 0; x < n; ++x) op[size_t(m) * n + x] = hm.lam(u, m, x);
    BinaryStructure b = classify_binary(op, n);
    if (!b.flags.spindle || !b.flags.entropic)
        throw ContractViolation(cat("spindle_from_hmodule: not an entropic spindle at u = ", u,
                                    ": ", b.shelf_witness, b.idem_witness, b.entropic_witness));
    return b;
}

YbePairMap ybe_map(const FiniteHeapOfModules& hm, Elem u) {
    BinaryStructure b = spindle_from_hmodule(hm, u);
    const int n = hm.morder();
    YbePairMap r;
    r.order = n;
    r.r1.resize(size_t(n) * n);
    r.r2.resize(size_t(n) * n);
    for (Elem m = 0; m < n; ++m)
        for (Elem x = 0; x < n; ++x) {
            r.r1[size_t(m) * n + x] = b.at(m, x);
            r.r2[size_t(m) * n + x] = m;
        }
    std::string w;
    if (!check_ybe(r, &w)) throw ContractViolation(cat("ybe_map: ", w));
    return r;
}

QuandleResult quandle_from_unit(const FiniteHeapOfModules& hm, Elem u, Elem ubar) {
    if (!in_range(u, hm.torder()) || !in_range(ubar, hm.torder()))
        throw StructuralError("quandle_from_unit: u or ubar out of range");
    Elem uu = hm.truss.times(u, ubar);
    for (Elem m = 0; m < hm.morder(); ++m)
        for (Elem x = 0; x < hm.morder(); ++x)
            if (hm.lam(uu, m, x) != x)
                throw MathError(cat("quandle_from_unit: L(u*ubar,", m, ",", x,
                                    ") = ", hm.lam(uu, m, x), ", expected ", x));

    QuandleResult out;
    out.quandle = spindle_from_hmodule(hm, u);
    if (!out.quandle.flags.quandle)
        throw ContractViolation("quandle_from_unit: division missing despite companion");

    out.solution = ybe_map(hm, u);
    const int n = hm.morder();
    Table2 i1(size_t(n) * n), i2(size_t(n) * n);
    for (Elem m = 0; m < n; ++m)
        for (Elem x = 0; x < n; ++x) {
            i1[size_t(m) * n + x] = x;
            i2[size_t(m) * n + x] = hm.lam(ubar, x, m);
        }
    // two-sided inverse check
    for (Elem m = 0; m < n; ++m)
        for (Elem x = 0; x < n; ++x) {
            Elem a = out.solution.first(m, x), b = out.solution.second(m, x);
            if (i1[size_t(a) * n + b] != m || i2[size_t(a) * n + b] != x)
                throw ContractViolation("quandle_from_unit: left inverse fails");
            Elem c = i1[size_t(m) * n + x], d = i2[size_t(m) * n + x];
            if (out.solution.first(c, d) != m || out.solution.second(c, d) != x)
                throw ContractViolation("quandle_from_unit: right inverse fails");
        }
    out.solution.inverse = {std::move(i1), std::move(i2)};

    // non-degeneracy: both partial maps bijective for every fixed y
    for (Elem y = 0; y < n; ++y) {
        std::vector<char> seen1(n, 0), seen2(n, 0);
        for (Elem x = 0; x < n; ++x) {
            Elem v1 = out.solution.first(y, x);   // x -> r1(y,x)
            Elem v2 = out.solution.second(x, y);  // x -> r2(x,y)
            if (seen1[v1]) throw ContractViolation("quandle_from_unit: r1(y,-) not bijective");
            if (seen2[v2]) throw ContractViolation("quandle_from_unit: r2(-,y) not bijective");
            seen1[v1] = seen2[v2] = 1;
        }
    }
    out.solution.nondegenerate = true;
    return out;
}

PairVerdict entropic_pair_check(const FiniteHeapOfModules& hm, Elem u, Elem v) {
    const int n = hm.morder();
    Elem uv = hm.truss.times(u, v), vu = hm.truss.times(v, u);
    for (Elem m = 0; m < n; ++m)
        for (Elem x = 0; x < n; ++x)
            if (hm.lam(uv, m, x) != hm.lam(vu, m, x)) return PairVerdict::HypothesisNotSatisfied;

    auto du = [&](Elem x, Elem y) { return hm.lam(u, x, y); };
    auto dv = [&](Elem x, Elem y) { return hm.lam(v, x, y); };
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                for (Elem w = 0; w < n; ++w)
                    if (dv(du(x, y), du(z, w)) != du(dv(x, z), dv(y, w)))
                        throw ContractViolation(
                            cat("entropic_pair_check: interchange fails at (", x, ",", y, ",", z,
                                ",", w, ")"));
    return PairVerdict::Holds;
}

BinaryStructure affine_spindle(const FiniteAbelianGroup& g, const Table1& f) {
    if (!is_group_hom(f, g, g)) throw MathError("affine_spindle: map is not additive");
    const int n = g.order;
    Table2 op(size_t(n) * n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            op[size_t(x) * n + y] = g.at(x, f[g.sub(y, x)]);
    BinaryStructure b = classify_binary(op, n);
    if (!b.flags.spindle || !b.flags.entropic)
        throw ContractViolation("affine_spindle: not an entropic spindle");

    // mirror rule: x *_f y = y *_{id-f} x
    Table1 idf(n);
    for (Elem x = 0; x < n; ++x) idf[x] = g.sub(x, f[x]);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (b.at(x, y) != g.at(y, idf[g.sub(x, y)]))
                throw ContractViolation("affine_spindle: mirror rule fails");
    return b;
}

void validate_sequence(const ShortExactSequence& s) {
    if (s.modulus < 1) throw StructuralError("sequence: modulus must be >= 1");
    for (const FiniteAbelianGroup* g : {&s.p, &s.q, &s.r}) {
        if (!validate_group(*g).valid()) throw MathError("sequence: invalid group");
        for (Elem x = 0; x < g->order; ++x)
            if (g->times(s.modulus, x) != g->zero)
                throw MathError(cat("sequence: element ", x, " violates exponent ", s.modulus));
    }
    if (s.iota.size() != size_t(s.p.order) || s.pi.size() != size_t(s.q.order))
        throw StructuralError("sequence: map sizes do not match");
    if (!is_group_hom(s.iota, s.p, s.q) || !is_group_hom(s.pi, s.q, s.r))
        throw MathError("sequence: maps must be additive");

    // injective iota, surjective pi, im(iota) = ker(pi)
    std::vector<char> seen(s.q.order, 0);
    for (Elem x : s.iota) {
        if (seen[x]) throw MathError("sequence: iota is not injective");
        seen[x] = 1;
    }
    std::vector<char> hit(s.r.order, 0);
    for (Elem x : s.pi) hit[x] = 1;
    for (char c : hit)
        if (!c) throw MathError("sequence: pi is not surjective");
    ElemSet image(s.q.order), kernel(s.q.order);
    for (Elem x : s.iota) image.insert(x);
    for (Elem q = 0; q < s.q.order; ++q)
        if (s.pi[q] == s.r.zero) kernel.insert(q);
    if (!(image == kernel)) throw MathError("sequence: image of iota differs from kernel of pi");
    if (s.p.order * s.r.order != s.q.order) throw MathError("sequence: orders do not multiply");
}

namespace {

// Common core: enumerate `maps` (all additive maps src -> dst passing
// `keep`), then build the heap of T(Z/n)-modules with
// Lambda(a, tau, sigma) = a.sigma + (1-a).tau computed pointwise in dst.
SectionGallery build_gallery(int modulus, const FiniteAbelianGroup& src,
                             const FiniteAbelianGroup& dst,
                             const std::function<bool(const Table1&)>& keep) {
    SectionGallery gal;
    for (const Table1& f : group_homs(src, dst))
        if (keep(f)) gal.maps.push_back(f);
    std::sort(gal.maps.begin(), gal.maps.end());
    if (gal.maps.empty()) return gal;

    const int m = int(gal.maps.size());
    auto index_of = [&](const Table1& f) {
        auto it = std::lower_bound(gal.maps.begin(), gal.maps.end(), f);
        if (it == gal.maps.end() || *it != f) return -1;
        return int(it - gal.maps.begin());
    };

    FiniteHeap heap;
    heap.order = m;
    heap.ternary.resize(size_t(m) * m * m);
    Table1 tmp(src.order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                for (Elem x = 0; x < src.order; ++x)
                    tmp[x] = dst.at(dst.sub(gal.maps[i][x], gal.maps[j][x]), gal.maps[k][x]);
                int idx = index_of(tmp);
                if (idx < 0)
                    throw ContractViolation("gallery: bracket escapes the section set");
                heap.ternary[(size_t(i) * m + j) * m + k] = idx;
            }

    FiniteTruss tn = truss_from_ring(ring_mod(modulus));
    Table3 lam(size_t(modulus) * m * m);
    for (Elem a = 0; a < modulus; ++a)
        for (int i = 0; i < m; ++i)    // tau
            for (int j = 0; j < m; ++j) {  // sigma
                for (Elem x = 0; x < src.order; ++x)
                    tmp[x] = dst.at(dst.times(a, gal.maps[j][x]),
                                    dst.times(modulus + 1 - a, gal.maps[i][x]));
                int idx = index_of(tmp);
                if (idx < 0)
                    throw ContractViolation("gallery: action escapes the section set");
                lam[(size_t(a) * m + i) * m + j] = idx;
            }
    FiniteHeapOfModules hm;
    hm.truss = std::move(tn);
    hm.heap = std::move(heap);
    hm.lambda = std::move(lam);
    ValidationReport rep = validate_hmodule(hm);
    if (!rep.valid())
        throw ContractViolation(cat("gallery: axioms fail\n", rep.to_string()));
    gal.hmodule = std::move(hm);
    return gal;
}

}  // namespace

SectionGallery splittings_gallery(const ShortExactSequence& s) {
    validate_sequence(s);
    return build_gallery(s.modulus, s.r, s.q, [&](const Table1& sigma) {
        for (Elem x = 0; x < s.r.order; ++x)
            if (s.pi[sigma[x]] != x) return false;
        return true;
    });
}

SectionGallery retractions_gallery(const ShortExactSequence& s) {
    validate_sequence(s);
    return build_gallery(s.modulus, s.q, s.p, [&](const Table1& rho) {
        for (Elem x = 0; x < s.p.order; ++x)
            if (rho[s.iota[x]] != x) return false;
        return true;
    });
}

std::string export_ybe_text(const YbePairMap& r) {
    std::ostringstream os;
    os << "order " << r.order << " nondegenerate " << (r.nondegenerate ? "true" : "false")
       << "\n";
    for (Elem x = 0; x < r.order; ++x)
        for (Elem y = 0; y < r.order; ++y)
            os << x << " " << y << " -> " << r.first(x, y) << " " << r.second(x, y) << "\n";
    return os.str();
}

}  // namespace finalg
