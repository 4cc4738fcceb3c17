/* Named check suites run over a corpus: each suite exercises one statement
 * exhaustively on every applicable corpus instance. */

#pragma once

#include "finalg/enumerate.hpp"

namespace finalg {

struct SuiteResult {
    std::string name;
    bool passed = true;
    long long checks = 0;
    std::string detail;  // first failure or exception text
};

struct SuiteInfo {
    std::string name;
    std::string description;
};

std::vector<SuiteInfo> list_suites();

// Throws StructuralError for an unknown suite name; never throws for
// check failures (they land in the result).
SuiteResult run_suite(const std::string& name, const Corpus& corpus);

std::vector<SuiteResult> run_all_suites(const Corpus& corpus, int jobs = 1);

// The default corpus used by the CLI when --corpus default is requested.
const Corpus& default_corpus();

}  // namespace finalg
