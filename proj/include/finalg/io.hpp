/* Structure-file serialization: JSON with flat integer tables and explicit
 * order fields. Serialization is canonical (fixed key order, two-space
 * indent, trailing newline) so reruns are byte-identical. */

#pragma once

#include <filesystem>
#include <variant>

#include "json.hpp"

#include "finalg/enumerate.hpp"
#include "finalg/ybe.hpp"

namespace finalg {

using Json = nlohmann::ordered_json;

Json to_json(const FiniteAbelianGroup& g);
Json to_json(const FiniteHeap& h);
Json to_json(const FiniteRing& r);
Json to_json(const FiniteTruss& t);
Json to_json(const FiniteTModule& m);
Json to_json(const FiniteTGroup& g);
Json to_json(const FiniteHeapOfModules& hm);
Json to_json(const FiniteTAffineSpace& a);
Json to_json(const BinaryStructure& b);
Json to_json(const YbePairMap& r);
Json to_json(const ShortExactSequence& s);

struct StructureFile {
    std::string kind;
    std::variant<FiniteAbelianGroup, FiniteHeap, FiniteRing, FiniteTruss, FiniteTModule,
                 FiniteTGroup, FiniteHeapOfModules, FiniteTAffineSpace, BinaryStructure,
                 YbePairMap, ShortExactSequence>
        value;
};

// Parses a structure object. Embedded trusses may be given inline or as a
// path string relative to `base_dir`. Malformed input throws
// StructuralError.
StructureFile parse_structure(const Json& j, const std::filesystem::path& base_dir);
StructureFile load_structure_file(const std::filesystem::path& file);

std::string dump_canonical(const Json& j);
void write_structure_file(const std::filesystem::path& file, const Json& j);

// Kind-dispatched validation for the CLI: runs the structure's validator
// and renders the report. For spindle files the stored flags must match
// the recomputed classification; for ybe files the braid relation (and
// claimed inverse and non-degeneracy) are checked.
struct VerifyOutcome {
    bool valid = false;
    std::string report;
};
VerifyOutcome verify_structure(const StructureFile& sf);

// Corpus directory: one file per structure named <name>.json plus
// manifest.json with counts per kind and order.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace finalg
