#ifndef DVLIGHT_SCENARIOS_HPP
#define DVLIGHT_SCENARIOS_HPP

#include "dvlight/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dvlight {

struct RunResult {
    std::vector<std::string> files;  // paths written, relative to out_dir
    nlohmann::json summary;          // contents of summary.json
};

// Executes the configured scenario and writes its CSV outputs, the resolved
// effective_config.json and summary.json into config.out_dir. On failure a
// FAILED.txt marker is left next to any partial outputs and the exception is
// rethrown. threads = 0 picks the hardware concurrency.
RunResult run_scenario(const ScenarioConfig& config, unsigned threads = 0);

} // namespace dvlight

#endif
