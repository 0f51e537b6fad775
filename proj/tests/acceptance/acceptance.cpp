// Prints one line per acceptance criterion, then the overall runtime limit.
// Exit status is nonzero if any line fails.

#include "polya/verify.hpp"

#include <algorithm>
#include <cstdio>

int main()
{
    polya::VerifyOptions options;
    options.suite = "all";
    options.acceptance_only = true;
    options.golden_dir = POLYA_ACCEPTANCE_GOLDEN_DIR;
    auto results = polya::run_verify(options);

    std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        const int ka = a.criterion ? a.criterion : 100, kb = b.criterion ? b.criterion : 100;
        return ka < kb;
    });
    int failed = 0;
    for (const auto& r : results) {
        const std::string label = r.criterion ? "criterion " + std::to_string(r.criterion) : r.name;
        std::printf("%s %-14s %-28s %s\n", r.passed ? "PASS" : "FAIL", label.c_str(),
                    r.criterion ? r.name.c_str() : "", r.detail.c_str());
        failed += r.passed ? 0 : 1;
    }
    std::printf("%d of %zu acceptance lines passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
