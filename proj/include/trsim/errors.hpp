#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace trsim {

/// Raised when an argument falls outside the domain of an operation
/// (non-positive distance, negative power, NaN signal strength, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A frequency that no band of an exposure standard covers.
class UnmappedBandError : public std::runtime_error {
public:
    UnmappedBandError(std::string standard, double freq_hz);

    const std::string& standard() const noexcept { return standard_; }
    double freq_hz() const noexcept { return freq_hz_; }

private:
    std::string standard_;
    double freq_hz_;
};

/// One field-level configuration problem. line is 0 when the value did not
/// come from a config file.
struct ConfigIssue {
    int line = 0;
    std::string field;
    std::string message;
};

/// Invalid configuration; carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);

    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

std::string to_string(const ConfigIssue& issue);

namespace detail {

[[noreturn]] void throw_domain(const std::string& what);

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw_domain(std::string(name) + " must be > 0");
    }
}

inline void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0)) {
        throw_domain(std::string(name) + " must be >= 0");
    }
}

}  // namespace detail
}  // namespace trsim
