#pragma once

// Fixed-step scenario engine. One iteration per NR slot: fading redraw,
// TR-mode switching, RRC event handling, frame-gated uplink activity and
// per-device downlink SINR; exposure and complexity are finalized at the end.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trsim/exposure.hpp"
#include "trsim/frames.hpp"
#include "trsim/rrc.hpp"
#include "trsim/trmode.hpp"
#include "trsim/ue.hpp"

namespace trsim::sim {

enum class Placement { Uniform, Fixed };
enum class DuplexMode { Fdd, Tdd };

struct ScenarioConfig {
    // [scenario]
    int n_users = 50;
    int n_tr = 20;  // TR-capable devices, placed in the TR region (cell edge)
    long n_slots = 1000;
    std::uint64_t seed = 1;
    Placement placement = Placement::Uniform;
    double cell_radius_m = 300.0;
    double min_distance_m = 10.0;
    double fixed_distance_m = 100.0;
    DuplexMode duplex = DuplexMode::Fdd;
    int mu = 0;
    std::string tdd_pattern{frames::kDefaultTddPattern};
    int superframe_subframe = frames::kDefaultSuperframeSubframe;
    double ul_activity = 0.5;  // P(uplink data demand) per slot
    double dl_activity = 0.5;
    double always_on_fraction = 0.1;  // of ue_tx_power_w, radiated by idle AM devices

    // [channel]
    double freq_hz = 3.5e9;
    double bs_tx_power_w = 20.0;
    double ue_tx_power_w = 0.2;
    double noise_dbm = -100.0;
    double snr_threshold_db = 0.0;

    // [switching]
    trmode::SwitchConfig switching{-48.0, 3.0};

    // [exposure]
    double observer_distance_m = 1.0;
    double tr_residual_power_w = 0.0;
    double complexity_unit_cost = 1.0;

    // [standards.<key>]
    std::vector<exposure::ExposureStandard> standards;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Every invariant violation as a ConfigError; returns normally if valid.
void validate(const ScenarioConfig& cfg);

/// Deterministic device layout for cfg (base station at the origin).
/// Uniform: uniform in the annulus [min_distance_m, cell_radius_m]; the n_tr
/// devices farthest from the base station are TR-capable.
/// Fixed: every device at fixed_distance_m, evenly spread in angle; the last
/// n_tr ids are TR-capable.
std::vector<UserEquipment> place_devices(const ScenarioConfig& cfg);

struct ModeChange {
    long slot = 0;
    int device = 0;
    trmode::Mode from = trmode::Mode::ActiveMode;
    trmode::Mode to = trmode::Mode::ActiveMode;
    double rss_dbm = 0.0;
};

struct RrcLogEntry {
    long slot = 0;
    int device = 0;
    rrc::RrcEvent event = rrc::RrcEvent::ConnectionRequest;
    rrc::RrcState from = rrc::RrcState::Idle;
    rrc::RrcState to = rrc::RrcState::Idle;
};

struct DeviceSeries {
    std::vector<double> rss_dbm;
    std::vector<double> sinr_db;
    std::vector<trmode::Mode> mode;
};

struct CohortOutage {
    std::optional<double> outage;  // empty when the cohort has no samples
    long samples = 0;
};

struct SimResult {
    std::vector<UserEquipment> devices;  // state after the last slot
    std::vector<DeviceSeries> series;    // per device, n_slots entries each
    /// Mean uplink power arriving at the base station per slot (sum over
    /// transmitting devices of P * path gain).
    std::vector<double> ul_interference_w;
    /// Devices that are uplink-enabled and grant-allowed per slot.
    std::vector<int> ul_active;
    CohortOutage outage_am;
    CohortOutage outage_tr;
    exposure::ExposureReport exposure;
    double complexity = 0.0;  // slot average of complexity_metric(ul_active)
    std::vector<ModeChange> mode_log;
    std::vector<RrcLogEntry> rrc_log;  // state-changing events only
    long blocked_ul_demands = 0;       // uplink demand suppressed by TR mode
    long ee_downlink_arrivals = 0;     // downlink served in RRC_EE
    long tr_frame_uplink_slots = 0;    // Uplink slots seen in TR frame contexts (always 0)

    double total_ul_interference_w() const;
};

/// Validates cfg (ConfigError before any work) and runs n_slots slots.
SimResult run_scenario(const ScenarioConfig& cfg);

struct OutagePoint {
    double mean_snr_db = 0.0;
    double outage_am = 0.0;
    double outage_tr = 0.0;
};

/// Mean interference-to-noise ratio each device would see from every other
/// device transmitting at full uplink power. inr[i][j] with inr[i][i] = 0.
std::vector<std::vector<double>> interference_to_noise(const ScenarioConfig& cfg,
                                                       std::span<const UserEquipment> devices);

/// Outage versus desired-link mean SNR, averaged over every device as the
/// victim. AM: all other devices interfere. TR: TR-capable devices are
/// silent. Interferers are Rayleigh faded.
std::vector<OutagePoint> outage_curve(const ScenarioConfig& cfg,
                                      std::span<const double> mean_snr_points_db);

/// Long-run exposure with every TR-capable device in TR mode (tr_enabled) or
/// with everyone in AM. Each device radiates its expected uplink power:
/// P * uplink-slot fraction * (ul_activity + (1 - ul_activity) * always_on).
exposure::ExposureReport steady_state_exposure(const ScenarioConfig& cfg, bool tr_enabled);

struct GenerationConfig {
    std::string label;
    ScenarioConfig config;
};

struct GenerationDensity {
    std::string label;
    double density_am = 0.0;
    double density_tr = 0.0;
};

std::vector<GenerationDensity> generation_power_density_series(
    std::span<const GenerationConfig> generations);

/// Uplink frame the device follows for its mode.
frames::RadioFrame uplink_frame_context(const ScenarioConfig& cfg, bool tr_active);

}  // namespace trsim::sim
