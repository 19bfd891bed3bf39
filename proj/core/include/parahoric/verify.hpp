#pragma once

#include <string>
#include <vector>

#include "parahoric/table_store.hpp"

namespace parahoric {

/* Self-verification suites. Every identity the library is built on is
 * checked exactly (no floating point, no sampling unless stated) and
 * reported as one record per checked instance. Reports are deterministic:
 * re-running a suite on the same inputs yields byte-identical text.
 */

struct CheckResult {
    std::string id;      // stable check identifier, slash-separated
    std::string inputs;  // instance description ("rho=2 tau=5"), may be empty
    bool pass = false;
    std::string expected;
    std::string got;
};

struct SuiteReport {
    std::string suite;
    int p = 0;
    int n = 0;
    std::vector<CheckResult> checks;

    long failed_count() const;
    bool pass() const { return failed_count() == 0; }
};

struct VerifyOptions {
    int jobs = 1;                      // suite-level parallelism for "all"
    int dihedral_k_max = 3;            // moments m_1..m_k checked
    long long max_words = 100000000;   // alternating-word budget
};

// Individual suites, in canonical order. "all" runs each of these.
const std::vector<std::string>& suite_names();

// DomainError on an unknown suite name. ResourceError propagates (budget);
// any other exception inside a single check marks that check failed and the
// suite continues.
SuiteReport run_suite(TableStore& store, const std::string& suite, int p, int n,
                      const VerifyOptions& opt = {});

std::string render_report(const SuiteReport& r);

}  // namespace parahoric
