#include "finalg/iso.hpp"

#include <algorithm>
#include <numeric>

namespace finalg {

std::vector<Elem> relabel_table(int order, int arity, const std::vector<Elem>& in,
                                const Table1& sigma) {
    std::vector<Elem> out(in.size());
    size_t total = in.size();
    std::vector<int> digits(arity, 0);
    for (size_t idx = 0; idx < total; ++idx) {
        // decode idx in base `order` (row-major: first digit most significant)
        size_t rest = idx;
        for (int d = arity - 1; d >= 0; --d) {
            digits[d] = int(rest % order);
            rest /= order;
        }
        size_t to = 0;
        for (int d = 0; d < arity; ++d) to = to * order + sigma[digits[d]];
        out[to] = sigma[in[idx]];
    }
    return out;
}

namespace {

// One round of colour refinement: each element's colour is rehashed with
// the multiset of (table id, position, tuple colours, value colour) over
// all tuples containing it. A few rounds separate most non-corresponding
// elements before the DFS starts.
std::vector<uint64_t> refine_colors(int n, const std::vector<TableRef>& ts, int rounds) {
    std::vector<uint64_t> color(n, 0x9e3779b97f4a7c15ULL);
    std::vector<int> digits;
    for (int r = 0; r < rounds; ++r) {
        std::vector<std::vector<uint64_t>> contrib(n);
        for (size_t ti = 0; ti < ts.size(); ++ti) {
            const auto& tr = ts[ti];
            const int k = tr.arity;
            digits.assign(k, 0);
            size_t total = tr.table->size();
            for (size_t idx = 0; idx < total; ++idx) {
                size_t rest = idx;
                for (int d = k - 1; d >= 0; --d) {
                    digits[d] = int(rest % n);
                    rest /= n;
                }
                uint64_t h = 0xcbf29ce484222325ULL ^ (uint64_t(ti) << 32);
                for (int d = 0; d < k; ++d) {
                    h ^= color[digits[d]];
                    h *= 0x100000001b3ULL;
                }
                uint64_t hv = h ^ (color[(*tr.table)[idx]] * 0x2545F4914F6CDD1DULL);
                for (int d = 0; d < k; ++d)
                    contrib[digits[d]].push_back(hv ^ (uint64_t(d) << 56));
                contrib[(*tr.table)[idx]].push_back(hv ^ 0xabcdef12345ULL);
            }
        }
        for (int x = 0; x < n; ++x) {
            std::sort(contrib[x].begin(), contrib[x].end());
            uint64_t h = color[x];
            for (uint64_t c : contrib[x]) {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
            color[x] = h;
        }
    }
    return color;
}

struct IsoSearch {
    int n;
    const std::vector<TableRef>* xs;
    const std::vector<TableRef>* ys;
    Table1 sigma;          // x -> y, -1 unassigned
    Table1 sigma_inv;      // y -> x, -1 unassigned
    std::vector<uint64_t> cx, cy;

    // Checks every tuple of every table whose entries are all assigned and
    // involves element `a`. Full rescan would be simpler but quadratically
    // slower; scanning tuples that mention `a` is enough because a tuple
    // becomes fully assigned exactly when its last-mentioned element does.
    bool consistent_with(Elem a) const {
        std::vector<int> digits;
        for (size_t ti = 0; ti < xs->size(); ++ti) {
            const auto& X = *(*xs)[ti].table;
            const auto& Y = *(*ys)[ti].table;
            const int k = (*xs)[ti].arity;
            digits.assign(k, 0);
            size_t total = X.size();
            for (size_t idx = 0; idx < total; ++idx) {
                size_t rest = idx;
                bool mentions = false;
                for (int d = k - 1; d >= 0; --d) {
                    digits[d] = int(rest % n);
                    rest /= n;
                    if (digits[d] == a) mentions = true;
                }
                if (!mentions && X[idx] != a) continue;
                bool all = true;
                for (int d = 0; d < k && all; ++d) all = sigma[digits[d]] >= 0;
                if (!all) continue;
                Elem vx = X[idx];
                size_t yidx = 0;
                for (int d = 0; d < k; ++d) yidx = yidx * n + sigma[digits[d]];
                Elem vy = Y[yidx];
                if (sigma[vx] >= 0) {
                    if (sigma[vx] != vy) return false;
                } else if (sigma_inv[vy] >= 0) {
                    return false;  // vy already taken by another element
                }
            }
        }
        return true;
    }

    bool dfs(int depth) {
        if (depth == n) return final_check();
        Elem a = depth;  // assign old elements in index order
        for (Elem b = 0; b < n; ++b) {
            if (sigma_inv[b] >= 0 || cx[a] != cy[b]) continue;
            sigma[a] = b;
            sigma_inv[b] = a;
            if (consistent_with(a) && dfs(depth + 1)) return true;
            sigma[a] = -1;
            sigma_inv[b] = -1;
        }
        return false;
    }

    bool final_check() const {
        for (size_t ti = 0; ti < xs->size(); ++ti) {
            const auto& X = *(*xs)[ti].table;
            const auto& Y = *(*ys)[ti].table;
            const int k = (*xs)[ti].arity;
            std::vector<int> digits(k, 0);
            for (size_t idx = 0; idx < X.size(); ++idx) {
                size_t rest = idx;
                for (int d = k - 1; d >= 0; --d) {
                    digits[d] = int(rest % n);
                    rest /= n;
                }
                size_t yidx = 0;
                for (int d = 0; d < k; ++d) yidx = yidx * n + sigma[digits[d]];
                if (Y[yidx] != sigma[X[idx]]) return false;
            }
        }
        return true;
    }
};

}  // namespace

std::optional<Table1> find_table_isomorphism(int order, const std::vector<TableRef>& xs,
                                             const std::vector<TableRef>& ys) {
    if (xs.size() != ys.size()) throw StructuralError("find_table_isomorphism: table count");
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].arity != ys[i].arity)
            throw StructuralError("find_table_isomorphism: arity mismatch");
        if (xs[i].table->size() != ys[i].table->size()) return std::nullopt;
    }
    if (order == 0) return Table1{};

    IsoSearch s;
    s.n = order;
    s.xs = &xs;
    s.ys = &ys;
    s.sigma.assign(order, -1);
    s.sigma_inv.assign(order, -1);
    s.cx = refine_colors(order, xs, 3);
    s.cy = refine_colors(order, ys, 3);

    // Colour multisets must match.
    {
        auto a = s.cx;
        auto b = s.cy;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    if (s.dfs(0)) return s.sigma;
    return std::nullopt;
}

std::vector<Elem> canonical_tables(int order, const std::vector<TableRef>& ts) {
    size_t total = 0;
    for (const auto& t : ts) total += t.table->size();
    std::vector<Elem> best;
    best.reserve(total);
    if (order == 0) {
        for (const auto& t : ts) (void)t;
        return best;  // all tables empty
    }

    Table1 sigma(order);
    std::iota(sigma.begin(), sigma.end(), 0);
    bool first = true;
    std::vector<Elem> cur;
    cur.reserve(total);
    do {
        cur.clear();
        bool worse = false;
        size_t pos = 0;
        for (const auto& t : ts) {
            std::vector<Elem> r = relabel_table(order, t.arity, *t.table, sigma);
            for (Elem v : r) {
                if (!first) {
                    if (v > best[pos]) {
                        worse = true;
                        break;
                    }
                    if (v < best[pos]) first = true;  // strictly better: take the rest freely
                }
                cur.push_back(v);
                ++pos;
            }
            if (worse) break;
        }
        if (!worse && cur.size() == total) {
            best = cur;
            first = false;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

}  // namespace finalg
