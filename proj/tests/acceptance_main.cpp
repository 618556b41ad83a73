// Acceptance suite: runs every verification battery at its pinned tolerance
// and prints one pass/fail line per criterion.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hdh/verify.hpp"

int main() {
    const std::uint64_t seed = 20240813;
    struct Criterion {
        const char* id;
        const char* battery;
        const char* text;
    };
    const std::vector<Criterion> criteria = {
        {"1", "inner-solvers",
         "closed-form inner solvers vs 201-per-axis grid on 500 seeded instances"},
        {"2", "lower-bounds",
         "adversarial >= standard complexity (regression + zero-one) on 50+50 instances"},
        {"3", "upper-dominance",
         "Bernstein and adversarial upper bounds dominate exact/MC estimates on 100 instances"},
        {"4", "spot-values", "frozen formula values (Bernstein 2.127207, V* = 0.3)"},
        {"5", "subset-sum", "cross-solver equality on 500 instances + 200 monotonicity checks"},
        {"6", "risk-transfer", "transfer inequality and ERM comparison on 200 instances"},
        {"7", "pgd", "7-step PGD at 2/255 reaches the closed-form worst case on 100 models"},
        {"8", "sweep", "l1 sweep: delta(mu=1e-2) <= delta(mu=0) per eps, golden CSV byte-exact"},
        {"9", "discrepancy-slack",
         "adversarial disc <= standard disc + slack (both variants) on 50 instances"},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        auto results = hdh::run_verify(seed, {c.battery}, HDH_GOLDEN_SWEEP, 1);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto& r = results.front();
        std::printf("[%s] criterion %s: %s (%.1fs; %s)\n", r.passed ? "PASS" : "FAIL", c.id,
                    c.text, dt, r.detail.c_str());
        if (!r.passed) {
            all_ok = false;
            std::printf("      violation: %s\n", r.violation.dump().c_str());
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
