#pragma once

// Sectioned key = value configuration text.
//
//   # comment
//   [scenario]
//   n_users = 50
//   [standards.icnirp]
//   name = ICNIRP
//   band = 3.3e9 3.8e9 61.0 | provenance note
//
// Sections: [scenario], [channel], [switching], [exposure],
// [standards.<key>]. Measurement fixtures use [standards.<key>] and
// [probe.<id>] only. Errors are collected per field with line numbers and
// thrown together as a ConfigError.

#include <string>
#include <string_view>
#include <vector>

#include "trsim/exposure.hpp"
#include "trsim/sim.hpp"

namespace trsim::config {

/// Keys that must be present in a scenario config, as "section.key".
const std::vector<std::string>& required_scenario_keys();

sim::ScenarioConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const sim::ScenarioConfig& cfg);

struct ExposureFixture {
    std::vector<exposure::ExposureStandard> standards;
    std::vector<exposure::ExposureProbe> probes;
};

ExposureFixture parse_exposure_fixture(std::string_view text);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace trsim::config
