#include <cstdio>

#include "exft/checks.h"

int main() {
    exft::CheckOptions opts;
    int failures = 0;
    for (const auto& r : exft::run_all_checks(opts)) {
        std::puts(exft::format_check(r).c_str());
        std::fflush(stdout);
        if (!r.passed) ++failures;
    }
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
