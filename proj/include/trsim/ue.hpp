#pragma once

#include "trsim/rrc.hpp"
#include "trsim/trmode.hpp"

namespace trsim {

/// A handset in the cell. The base station sits at the origin.
struct UserEquipment {
    int id = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    double distance_m = 1.0;  // to the base station
    double tx_power_w = 0.2;  // uplink data power
    double antenna_gain_lin = 1.0;
    double freq_hz = 3.5e9;
    trmode::Mode mode = trmode::Mode::ActiveMode;
    rrc::RrcState rrc_state = rrc::RrcState::Connected;
    /// Runs the adaptive switching controller; legacy devices stay in AM.
    bool tr_capable = false;
    // Demand in the current slot.
    bool dl_demand = false;
    bool ul_demand = false;
};

/// Uplink power the device radiates: zero in TR mode.
inline double effective_uplink_power_w(const UserEquipment& ue) noexcept {
    return trmode::uplink_enabled(ue.mode) ? ue.tx_power_w : 0.0;
}

}  // namespace trsim
