#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trsim/report.hpp"

namespace trsim::cli {

/// Process exit codes; also listed in --help.
enum class ExitCode : int {
    Ok = 0,
    Usage = 1,
    Config = 2,
    Domain = 3,
    UnmappedBand = 4,
    Io = 5,
    Internal = 70,
};

struct RunManifest {
    std::string subcommand;      // run | outage | frames | rrc-check | exposure
    std::string config_path;     // scenario config (run, outage, exposure)
    std::string fixture_path;    // measurement fixture (exposure)
    std::string output_path;     // empty: standard output
    report::Format format = report::Format::Csv;
    std::optional<std::uint64_t> seed_override;

    // frames
    int mu = 0;
    std::string duplex = "tdd";
    bool tr_active = false;
    std::string tdd_pattern;
    int superframe_subframe = 1;

    // outage
    std::vector<double> mean_snr_points_db;
};

/// Executes one manifest. Diagnostics go to err as a single line starting
/// with "trsim: error[<kind>]:", optionally followed by indented details.
int dispatch(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Parses argv into a manifest and dispatches it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trsim::cli
