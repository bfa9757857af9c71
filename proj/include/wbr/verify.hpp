#pragma once

#include "wbr/rings.hpp"

namespace wbr {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
};

struct VerifyParams {
    long long cyclic_nmax = 12;   // integrality over divisor posets of n <= nmax
    long long lenart_rmax = 5;
    long long lenart_nmax = 12;
    long long frobenius_rmax = 4;
    long long frobenius_nmax = 6;
    int random_vectors = 50;      // per configuration in the ring-axiom suite
    unsigned long long seed = 20240915;
};

// The S3 table of marks as a loadable document (the built-in nonabelian case).
nlohmann::json s3_marks_document();

SuiteReport verify_integrality(const VerifyParams& p = {});
SuiteReport verify_ring_axioms(const VerifyParams& p = {});
SuiteReport verify_necklace_oracle(const VerifyParams& p = {});
SuiteReport verify_mackey_suite(const VerifyParams& p = {});
SuiteReport verify_lenart_suite(const VerifyParams& p = {});
SuiteReport verify_classify_suite(const VerifyParams& p = {});

// Runs one named suite: integrality | ring-axioms | necklace-oracle |
// mackey | lenart | classify | all.
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyParams& p = {});

}  // namespace wbr
