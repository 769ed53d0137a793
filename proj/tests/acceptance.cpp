// Acceptance gate: runs every acceptance criterion at its pinned tolerance
// and prints one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cstdio>
#include <cstring>

#include "srso3/checks.hpp"

int main(int argc, char** argv) {
    srso3::checks::CheckOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc)
            opt.jobs = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opt.seed = static_cast<std::uint64_t>(std::strtoull(argv[++i], nullptr, 10));
    }

    const auto results = srso3::checks::run_suite("acceptance", opt);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%s  %-24s value=%-14.6g threshold=%-12.6g (%.2fs)%s%s\n",
                    r.pass ? "PASS" : "FAIL", r.id.c_str(), r.value, r.threshold,
                    r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
        ok = ok && r.pass;
    }
    std::printf("%s: %zu criteria\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                results.size());
    return ok ? 0 : 1;
}
