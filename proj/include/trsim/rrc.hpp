#pragma once

// Four-state RRC machine: the usual Idle / Connected / Inactive states plus
// the energy-efficient state that keeps a downlink-only connection while the
// device is in TR mode.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trsim::rrc {

enum class RrcState { Idle, Connected, Inactive, EnergyEfficient };

enum class RrcEvent {
    ConnectionRequest,
    ConnectionRelease,
    SuspendToInactive,
    ResumeFromInactive,
    TrModeEnter,
    TrModeExit,
    UplinkDataPending,
    DownlinkDataArrival,
    InactivityTimeout,
};

inline constexpr std::array kAllStates{RrcState::Idle, RrcState::Connected, RrcState::Inactive,
                                       RrcState::EnergyEfficient};

inline constexpr std::array kAllEvents{
    RrcEvent::ConnectionRequest, RrcEvent::ConnectionRelease,  RrcEvent::SuspendToInactive,
    RrcEvent::ResumeFromInactive, RrcEvent::TrModeEnter,       RrcEvent::TrModeExit,
    RrcEvent::UplinkDataPending, RrcEvent::DownlinkDataArrival, RrcEvent::InactivityTimeout,
};

/// Total transition function; pairs without a listed transition self-loop.
RrcState transition(RrcState state, RrcEvent event) noexcept;

/// Only Connected may be granted uplink resources.
constexpr bool uplink_grant_allowed(RrcState state) noexcept {
    return state == RrcState::Connected;
}

std::string_view to_string(RrcState state) noexcept;
std::string_view to_string(RrcEvent event) noexcept;

struct TableEntry {
    RrcState from;
    RrcEvent event;
    RrcState to;
};

struct ReachabilityReport {
    std::vector<TableEntry> table;  // every (state, event) pair, state-major
    /// Shortest event path from Idle to each state (BFS, events tried in
    /// declaration order); nullopt for unreachable states.
    std::array<std::optional<std::vector<RrcEvent>>, kAllStates.size()> paths_from_idle;
    bool all_reachable_from_idle = false;
    /// No state reachable from EnergyEfficient grants uplink without being
    /// Connected, and EnergyEfficient itself never grants.
    bool ee_uplink_safe = false;
    /// UplinkDataPending takes EnergyEfficient to a grant-allowed state in
    /// exactly one event.
    bool ee_uplink_resume_single_event = false;
    /// Number of single events that move Idle straight to EnergyEfficient.
    int idle_to_ee_single_events = 0;
};

/// Exhaustive check over the 4 x 9 transition table.
ReachabilityReport check_reachability();

/// Structured text rendering used by `rrc-check`.
std::string format_report(const ReachabilityReport& report);

}  // namespace trsim::rrc
