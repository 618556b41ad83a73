#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdh/train.hpp"

#include "json.hpp"

namespace hdh {

struct BatteryResult {
    std::string name;
    bool passed = false;
    std::string detail;
    nlohmann::json violation;  // first violating instance, replayable via its seed
};

// Reference synthetic pair and training protocol used by the recorded sweep.
SyntheticDomainSpec reference_sweep_spec();
TrainConfig reference_sweep_config();
Vec reference_mu_grid();
Vec reference_eps_grid();

// Seeded verification batteries.  `only` filters by name (empty = all);
// `golden_sweep_path` enables the byte-exact sweep comparison when nonempty.
std::vector<BatteryResult> run_verify(std::uint64_t seed, const std::vector<std::string>& only,
                                      const std::string& golden_sweep_path, int threads = 1);

std::vector<std::string> verify_battery_names();

}  // namespace hdh
