#include "trsim/errors.hpp"

#include <fmt/format.h>

namespace trsim {

UnmappedBandError::UnmappedBandError(std::string standard, double freq_hz)
    : std::runtime_error(fmt::format("frequency {:.6g} Hz is outside every band of standard '{}'",
                                     freq_hz, standard)),
      standard_(std::move(standard)),
      freq_hz_(freq_hz) {}

namespace {

std::string summarize(const std::vector<ConfigIssue>& issues) {
    if (issues.empty()) {
        return "invalid configuration";
    }
    std::string s = fmt::format("{} configuration problem(s): {}", issues.size(),
                                to_string(issues.front()));
    return s;
}

}  // namespace

std::string to_string(const ConfigIssue& issue) {
    if (issue.line > 0) {
        return fmt::format("line {}: {}: {}", issue.line, issue.field, issue.message);
    }
    return fmt::format("{}: {}", issue.field, issue.message);
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

namespace detail {

void throw_domain(const std::string& what) { throw DomainError(what); }

}  // namespace detail
}  // namespace trsim
