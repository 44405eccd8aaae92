#include "trsim/trmode.hpp"

#include <cmath>

#include "trsim/errors.hpp"

namespace trsim::trmode {

void validate(const SwitchConfig& cfg) {
    if (!std::isfinite(cfg.rss_threshold_dbm)) {
        detail::throw_domain("rss_threshold_dbm must be finite");
    }
    if (!(cfg.hysteresis_db >= 0.0) || !std::isfinite(cfg.hysteresis_db)) {
        detail::throw_domain("hysteresis_db must be finite and >= 0");
    }
}

Mode evaluate_switch(double rss_dbm, const SwitchConfig& cfg, Mode current) {
    if (std::isnan(rss_dbm)) {
        detail::throw_domain("rss_dbm is NaN");
    }
    validate(cfg);
    if (current == Mode::ActiveMode && rss_dbm < cfg.rss_threshold_dbm - cfg.hysteresis_db) {
        return Mode::ThermalRadiationMode;
    }
    if (current == Mode::ThermalRadiationMode &&
        rss_dbm > cfg.rss_threshold_dbm + cfg.hysteresis_db) {
        return Mode::ActiveMode;
    }
    return current;
}

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::ActiveMode ? "AM" : "TR";
}

std::string_view to_string(ServiceClass svc) noexcept {
    switch (svc) {
        case ServiceClass::VoiceCall: return "voice";
        case ServiceClass::TextMessage: return "text";
        case ServiceClass::HighBandwidth: return "high-bandwidth";
    }
    return "?";
}

}  // namespace trsim::trmode
