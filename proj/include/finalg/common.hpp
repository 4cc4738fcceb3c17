/* Shared primitives: element indices, flat tables, subsets, error types,
 * validation reports and small utilities used by every structure module. */

#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace finalg {

// Elements of every finite structure are dense indices 0..n-1.
// Operation tables are flat row-major arrays.
using Elem = int;
using Table1 = std::vector<Elem>;  // unary: n entries
using Table2 = std::vector<Elem>;  // binary: n*m entries
using Table3 = std::vector<Elem>;  // ternary: n*m*k entries

// Malformed input (wrong table length, out-of-range entry, bad file).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical check failed: axiom violation used as a precondition,
// missing companion element, non-closed subset. Carries a rendered witness.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A statement that is a theorem for valid inputs failed; indicates a bug
// in this library or corrupted data, never a user error.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// An enumeration or search exceeded its configured budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AxiomResult {
    std::string axiom;
    bool pass = true;
    std::string witness;  // rendered equation instance, empty when pass
};

struct ValidationReport {
    bool structural_ok = true;
    std::string structural_message;
    std::vector<AxiomResult> axioms;

    // Facts recorded by specific validators.
    std::optional<Elem> unit;
    std::optional<Elem> absorber;
    bool unital = false;
    bool isotropic = false;

    bool valid() const {
        if (!structural_ok) return false;
        for (const auto& a : axioms)
            if (!a.pass) return false;
        return true;
    }

    const AxiomResult* find(const std::string& axiom) const {
        for (const auto& a : axioms)
            if (a.axiom == axiom) return &a;
        return nullptr;
    }

    void add(std::string axiom, bool pass, std::string witness = {}) {
        axioms.push_back({std::move(axiom), pass, std::move(witness)});
    }

    std::string to_string() const;
};

// Subset of {0..n-1} as a bitmask; orders here never exceed a few words.
class ElemSet {
  public:
    ElemSet() = default;
    explicit ElemSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    static ElemSet full(int universe) {
        ElemSet s(universe);
        for (int i = 0; i < universe; ++i) s.insert(i);
        return s;
    }
    static ElemSet of(int universe, std::initializer_list<Elem> xs) {
        ElemSet s(universe);
        for (Elem x : xs) s.insert(x);
        return s;
    }

    int universe() const { return n_; }
    bool contains(Elem x) const { return (w_[x >> 6] >> (x & 63)) & 1u; }
    void insert(Elem x) { w_[x >> 6] |= uint64_t(1) << (x & 63); }
    void erase(Elem x) { w_[x >> 6] &= ~(uint64_t(1) << (x & 63)); }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    std::vector<Elem> members() const {
        std::vector<Elem> v;
        for (int i = 0; i < n_; ++i)
            if (contains(i)) v.push_back(i);
        return v;
    }

    bool operator==(const ElemSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const ElemSet& o) const { return !(*this == o); }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// FNV-1a over ints; used for fingerprints and corpus file names.
// Fixed constants keep hashes stable across platforms and runs.
inline uint64_t fnv1a(const std::vector<Elem>& data, uint64_t seed = 0xcbf29ce484222325ULL) {
    uint64_t h = seed;
    for (Elem v : data) {
        for (int b = 0; b < 4; ++b) {
            h ^= uint64_t((v >> (8 * b)) & 0xff);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::string hex16(uint64_t h);

// Tiny formatting helper for witnesses; joins with the given separator.
template <class... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

inline bool in_range(Elem x, int n) { return x >= 0 && x < n; }

// Checks a flat table: exact length and entries in [0, range).
void check_table(const std::vector<Elem>& t, size_t expected, int range, const char* what);

}  // namespace finalg
