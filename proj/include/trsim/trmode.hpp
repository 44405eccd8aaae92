#pragma once

#include <string_view>

namespace trsim::trmode {

enum class Mode { ActiveMode, ThermalRadiationMode };

enum class ServiceClass { VoiceCall, TextMessage, HighBandwidth };

/// Threshold on downlink received power with a symmetric dead band.
/// hysteresis_db = 0 gives the plain single-threshold rule.
struct SwitchConfig {
    double rss_threshold_dbm = -90.0;
    double hysteresis_db = 3.0;
    friend bool operator==(const SwitchConfig&, const SwitchConfig&) = default;
};

void validate(const SwitchConfig& cfg);

/// AM -> TR below threshold - hysteresis, TR -> AM above threshold +
/// hysteresis, otherwise the current mode is kept.
Mode evaluate_switch(double rss_dbm, const SwitchConfig& cfg, Mode current);

/// TR mode is half duplex: downlink only.
constexpr bool uplink_enabled(Mode mode) noexcept { return mode == Mode::ActiveMode; }

/// TR mode keeps only the low-rate services.
constexpr bool service_admitted(Mode mode, ServiceClass svc) noexcept {
    return mode == Mode::ActiveMode || svc != ServiceClass::HighBandwidth;
}

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(ServiceClass svc) noexcept;

}  // namespace trsim::trmode
