#pragma once

// Far-field exposure metrics: power density, plane-wave E-field, Exposure
// Ratio against configurable reference levels, and the pairwise
// interference complexity count.

#include <span>
#include <string>
#include <vector>

#include "trsim/trmode.hpp"
#include "trsim/ue.hpp"

namespace trsim::exposure {

/// Free-space wave impedance used for the plane-wave relation, ohms.
inline constexpr double kFreeSpaceImpedance = 376.73;

/// Reference level over [freq_low_hz, freq_high_hz).
struct Band {
    double freq_low_hz = 0.0;
    double freq_high_hz = 0.0;
    double e_ref_v_per_m = 0.0;
    std::string provenance;

    friend bool operator==(const Band&, const Band&) = default;
};

struct ExposureStandard {
    std::string name;
    std::vector<Band> bands;  // sorted, non-overlapping

    /// Band containing freq_hz or nullptr.
    const Band* find_band(double freq_hz) const noexcept;
    friend bool operator==(const ExposureStandard&, const ExposureStandard&) = default;
};

/// Throws DomainError on unsorted/overlapping bands or non-positive e_ref.
void validate(const ExposureStandard& standard);

/// Spherical spreading: P G / (4 pi d^2), W/m^2.
double power_density(double tx_power_w, double antenna_gain_lin, double distance_m);

/// Plane-wave E-field sqrt(S eta0), V/m.
double e_field_from_density(double s_w_m2);

/// Inverse of e_field_from_density.
double density_from_e_field(double e_field_v_per_m);

/// E / E_ref of the band containing freq_hz; UnmappedBandError otherwise.
double exposure_ratio(double e_field_v_per_m, const ExposureStandard& standard, double freq_hz);

struct DeviceExposure {
    int device_id = 0;
    double power_density_w_m2 = 0.0;
    double e_field_v_per_m = 0.0;
    std::vector<double> er_per_standard;  // parallel to ExposureReport::standards
};

/// Aggregation:
///   network_total_power_density = sum of per-device densities (incoherent)
///   network_e_field            = e_field_from_density(total density)
///   network_er[k]              = sqrt(sum_i er_i[k]^2)
/// The last is the multi-source summation of squared field ratios, which
/// reduces to network_e_field / e_ref when all devices share one band.
/// Sums run over sorted terms so the totals do not depend on device order.
struct ExposureReport {
    std::vector<std::string> standards;
    std::vector<DeviceExposure> per_device;
    double network_total_power_density = 0.0;
    double network_e_field_v_per_m = 0.0;
    std::vector<double> network_er_per_standard;
};

struct ExposureOptions {
    /// Distance from each device to the exposed person.
    double observer_distance_m = 1.0;
    /// Power a TR-mode device still radiates to keep its downlink alive.
    /// Zero models a purely receiving handset.
    double tr_residual_power_w = 0.0;
};

ExposureReport network_exposure(std::span<const UserEquipment> devices,
                                 std::span<const ExposureStandard> standards,
                                 const ExposureOptions& options = {});

/// Pairwise interference relationships among active uplink transmitters:
/// unit_cost * n (n - 1) / 2.
double complexity_metric(long long n_active_ul, double unit_cost = 1.0);

/// A fixed measurement: power density observed for one generation and mode,
/// to be rated against one standard.
struct ExposureProbe {
    std::string id;
    std::string generation;
    trmode::Mode mode = trmode::Mode::ActiveMode;
    std::string standard;
    double freq_hz = 0.0;
    double power_density_w_m2 = 0.0;
    std::string note;

    friend bool operator==(const ExposureProbe&, const ExposureProbe&) = default;
};

struct ProbeResult {
    ExposureProbe probe;
    double e_field_v_per_m = 0.0;
    double exposure_ratio = 0.0;
};

/// Rates each probe against the standard it names (matched by name).
std::vector<ProbeResult> evaluate_probes(std::span<const ExposureProbe> probes,
                                         std::span<const ExposureStandard> standards);

}  // namespace trsim::exposure
