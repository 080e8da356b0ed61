#ifndef FNLSLAB_SCENARIOS_HPP
#define FNLSLAB_SCENARIOS_HPP

#include <cstdint>
#include <string>

#include "fnlslab/config.hpp"

namespace fnls {

struct RunOverrides {
    std::string out_dir;              // empty -> [experiment] out_dir or "."
    int threads = 0;                  // <= 0 -> config/env/1
    bool seed_override_set = false;
    std::uint64_t seed_override = 0;
};

/// Executes one scenario: writes results.json (plus scenario CSV/checkpoint
/// files) under the output directory.  Returns 0 on success; verification
/// scenarios return 1 when a property fails.  Throws on invalid
/// configuration or execution failure.
int run_scenario(const ExperimentConfig& config, const RunOverrides& o = {});

const char* version_string();

}  // namespace fnls

#endif
