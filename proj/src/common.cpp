#include "finalg/common.hpp"

namespace finalg {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    if (!structural_ok) {
        os << "structural error: " << structural_message << "\n";
        return os.str();
    }
    for (const auto& a : axioms) {
        os << (a.pass ? "  [ok]   " : "  [FAIL] ") << a.axiom;
        if (!a.pass && !a.witness.empty()) os << ": " << a.witness;
        os << "\n";
    }
    if (unit) os << "  unit = " << *unit << "\n";
    if (absorber) os << "  absorber = " << *absorber << "\n";
    return os.str();
}

std::string hex16(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

void check_table(const std::vector<Elem>& t, size_t expected, int range, const char* what) {
    if (t.size() != expected)
        throw StructuralError(cat(what, ": expected ", expected, " entries, got ", t.size()));
    for (size_t i = 0; i < t.size(); ++i)
        if (!in_range(t[i], range))
            throw StructuralError(cat(what, ": entry ", t[i], " at index ", i, " out of range [0,",
                                      range, ")"));
}

}  // namespace finalg
