#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cusp/io.hpp"
#include "cusp/random.hpp"

namespace cusp {

struct CheckRecord {
    std::string check;
    std::string family;
    json params;
    json expected;
    json observed;
    double residual = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::string suite = "all";
    std::uint64_t seed = default_seed;
    int samples = 100;
    double tol = 1e-10;
    unsigned threads = 0;   // 0: hardware concurrency
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckRecord> records;
    std::vector<std::string> uncovered;   // labels or certificates never exercised by "all"
    int passed = 0;
    int failed = 0;
    double seconds = 0.0;

    bool ok() const { return failed == 0 && uncovered.empty(); }
};

/// detII, closures, conjugators, normalforms, classify, haettel, horosphere, exp, all.
const std::vector<std::string>& verify_suites();

/** @brief Runs a suite on a worker pool. Throws BadParams for an unknown suite. */
VerifyReport run_verify(const VerifyOptions& opt);

json to_json(const CheckRecord& r);
json summary_json(const VerifyReport& r);
/// One record per line followed by the summary line.
void write_jsonl(std::ostream& os, const VerifyReport& r);

/// Random matrix with singular values in [1/cond_max, 1] after scaling; used for conjugate presentations.
Mat4 random_well_conditioned(Rng& rng, double cond_max);

}  // namespace cusp
