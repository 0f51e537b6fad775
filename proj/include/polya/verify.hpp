#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace polya {

struct CheckResult {
    int criterion = 0;  ///< 1..12 for acceptance criteria, 0 for extra invariants
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::string suite = "all";
    /// Directory holding f4_zeros.csv and origin_values.csv.
    std::filesystem::path golden_dir;
    bool acceptance_only = false;  ///< skip the extra invariants
};

/// all, quadrature, zeros, lemma1, lemma2, fields, orbit.
const std::vector<std::string>& suite_names();

/// $POLYA_GOLDEN_DIR if set, else the directory baked in at build time.
std::filesystem::path default_golden_dir();

/// Runs the checks of one suite in a fixed order. Numerical failures inside a
/// check mark it failed; they do not escape. Throws InvalidArgument for an
/// unknown suite name.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

/// One line per check plus a summary line.
std::string format_results(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace polya
