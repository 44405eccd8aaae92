#pragma once

// Machine-readable emitters. Column orders are frozen; see README.

#include <span>
#include <string>

#include "trsim/exposure.hpp"
#include "trsim/frames.hpp"
#include "trsim/rrc.hpp"
#include "trsim/sim.hpp"

namespace trsim::report {

enum class Format { Csv, JsonLines };

std::string emit_run(const sim::ScenarioConfig& cfg, const sim::SimResult& result, Format format);

std::string emit_outage(std::span<const sim::OutagePoint> curve, Format format);

std::string emit_exposure(const exposure::ExposureReport& report, Format format);

std::string emit_probes(std::span<const exposure::ProbeResult> results, Format format);

/// Csv selects the plain frame dump (one line per subframe, preceded by a
/// lowercase '# ...' header line per frame).
std::string emit_frames(std::span<const frames::RadioFrame> frames, Format format);

/// Csv selects the structured text of rrc::format_report.
std::string emit_rrc(const rrc::ReachabilityReport& report, Format format);

/// Fixed-precision number rendering shared by every emitter.
std::string number(double v);

}  // namespace trsim::report
