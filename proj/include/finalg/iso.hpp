/* Backtracking isomorphism search between finite operation tables on a
 * common carrier size, with invariant-refinement pruning. Used for
 * canonical forms, truss isomorphism and cross-basepoint comparisons. */

#pragma once

#include "finalg/common.hpp"

namespace finalg {

// A flat table of the given arity over the carrier; entries are elements.
struct TableRef {
    int arity;
    const std::vector<Elem>* table;
};

// Searches for a bijection sigma with
//   sigma(t_x[a1,..,ak]) == t_y[sigma a1,..,sigma ak]
// simultaneously for every paired table. Both sides must list tables of
// equal arity in the same order. Returns the witness or nullopt.
std::optional<Table1> find_table_isomorphism(int order, const std::vector<TableRef>& xs,
                                             const std::vector<TableRef>& ys);

// Lexicographically minimal concatenation of the relabeled tables over all
// carrier permutations (early-exit bounded scan). The returned vector is
// the concatenated canonical tables.
std::vector<Elem> canonical_tables(int order, const std::vector<TableRef>& ts);

// Applies sigma to a table: out[sigma a1,...] = sigma(in[a1,...]).
std::vector<Elem> relabel_table(int order, int arity, const std::vector<Elem>& in,
                                const Table1& sigma);

}  // namespace finalg
