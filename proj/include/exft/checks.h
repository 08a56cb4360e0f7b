#pragma once

// The identity and invariant suite behind `exft verify` and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

namespace exft {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Measured quantities and any findings.
    std::string detail;
};

struct CheckOptions {
    uint64_t seed = 20240601;
    /// Paired LCU on/off comparison.
    long leakage_trials = 10000;
    double leakage_rate = 1e-2;
    /// Boosting protocol runs.
    long boosting_trials = 100000;
    /// Trials of each qec-sim determinism run.
    long determinism_trials = 2000;
    unsigned threads = 0;
};

CheckResult check_conjugation_identity(const CheckOptions& o);
CheckResult check_encoded_hadamard(const CheckOptions& o);
CheckResult check_encoded_cp_cnot(const CheckOptions& o);
CheckResult check_recoupling(const CheckOptions& o);
CheckResult check_lcu(const CheckOptions& o);
CheckResult check_error_classification(const CheckOptions& o);
CheckResult check_phase_flip_cycle(const CheckOptions& o);
CheckResult check_leakage_cycle(const CheckOptions& o);
CheckResult check_boosting(const CheckOptions& o);
CheckResult check_propagation(const CheckOptions& o);
CheckResult check_determinism(const CheckOptions& o);

/// All eleven checks in order.
std::vector<CheckResult> run_all_checks(const CheckOptions& o);

/// "[PASS] 3 encoded CP/CNOT: ..." style line.
std::string format_check(const CheckResult& r);

}  // namespace exft
