#include "trsim/rrc.hpp"

#include <deque>

#include <fmt/format.h>

namespace trsim::rrc {

namespace {

std::size_t index_of(RrcState s) { return static_cast<std::size_t>(s); }

std::string join_path(const std::vector<RrcEvent>& path) {
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) {
            s += ", ";
        }
        s += to_string(path[i]);
    }
    return s + "]";
}

}  // namespace

RrcState transition(RrcState state, RrcEvent event) noexcept {
    using S = RrcState;
    using E = RrcEvent;
    switch (state) {
        case S::Idle:
            if (event == E::ConnectionRequest) return S::Connected;
            break;
        case S::Connected:
            if (event == E::ConnectionRelease) return S::Idle;
            if (event == E::SuspendToInactive) return S::Inactive;
            if (event == E::TrModeEnter) return S::EnergyEfficient;
            break;
        case S::Inactive:
            if (event == E::ResumeFromInactive) return S::Connected;
            if (event == E::InactivityTimeout) return S::Idle;
            break;
        case S::EnergyEfficient:
            if (event == E::TrModeExit) return S::Connected;
            if (event == E::UplinkDataPending) return S::Connected;
            // DownlinkDataArrival is served in place.
            break;
    }
    return state;
}

std::string_view to_string(RrcState state) noexcept {
    switch (state) {
        case RrcState::Idle: return "RRC_IDLE";
        case RrcState::Connected: return "RRC_CONNECTED";
        case RrcState::Inactive: return "RRC_INACTIVE";
        case RrcState::EnergyEfficient: return "RRC_EE";
    }
    return "?";
}

std::string_view to_string(RrcEvent event) noexcept {
    switch (event) {
        case RrcEvent::ConnectionRequest: return "ConnectionRequest";
        case RrcEvent::ConnectionRelease: return "ConnectionRelease";
        case RrcEvent::SuspendToInactive: return "SuspendToInactive";
        case RrcEvent::ResumeFromInactive: return "ResumeFromInactive";
        case RrcEvent::TrModeEnter: return "TrModeEnter";
        case RrcEvent::TrModeExit: return "TrModeExit";
        case RrcEvent::UplinkDataPending: return "UplinkDataPending";
        case RrcEvent::DownlinkDataArrival: return "DownlinkDataArrival";
        case RrcEvent::InactivityTimeout: return "InactivityTimeout";
    }
    return "?";
}

ReachabilityReport check_reachability() {
    ReachabilityReport r;
    for (RrcState s : kAllStates) {
        for (RrcEvent e : kAllEvents) {
            r.table.push_back({s, e, transition(s, e)});
        }
    }

    r.paths_from_idle[index_of(RrcState::Idle)] = std::vector<RrcEvent>{};
    std::deque<RrcState> queue{RrcState::Idle};
    while (!queue.empty()) {
        const RrcState s = queue.front();
        queue.pop_front();
        for (RrcEvent e : kAllEvents) {
            const RrcState next = transition(s, e);
            auto& slot = r.paths_from_idle[index_of(next)];
            if (!slot) {
                slot = *r.paths_from_idle[index_of(s)];
                slot->push_back(e);
                queue.push_back(next);
            }
        }
    }
    r.all_reachable_from_idle = true;
    for (const auto& p : r.paths_from_idle) {
        r.all_reachable_from_idle = r.all_reachable_from_idle && p.has_value();
    }

    // Every state reachable from EE: grant implies Connected, and EE itself
    // never grants.
    std::array<bool, kAllStates.size()> seen{};
    seen[index_of(RrcState::EnergyEfficient)] = true;
    queue = {RrcState::EnergyEfficient};
    bool safe = !uplink_grant_allowed(RrcState::EnergyEfficient);
    while (!queue.empty()) {
        const RrcState s = queue.front();
        queue.pop_front();
        if (uplink_grant_allowed(s) && s != RrcState::Connected) {
            safe = false;
        }
        for (RrcEvent e : kAllEvents) {
            const RrcState next = transition(s, e);
            if (!seen[index_of(next)]) {
                seen[index_of(next)] = true;
                queue.push_back(next);
            }
        }
    }
    r.ee_uplink_safe = safe;

    r.ee_uplink_resume_single_event =
        uplink_grant_allowed(transition(RrcState::EnergyEfficient, RrcEvent::UplinkDataPending));

    for (RrcEvent e : kAllEvents) {
        if (transition(RrcState::Idle, e) == RrcState::EnergyEfficient) {
            ++r.idle_to_ee_single_events;
        }
    }
    return r;
}

std::string format_report(const ReachabilityReport& report) {
    std::string out;
    out += fmt::format("# transitions {}\n", report.table.size());
    out += "from,event,to,uplink_grant\n";
    for (const auto& t : report.table) {
        out += fmt::format("{},{},{},{}\n", to_string(t.from), to_string(t.event), to_string(t.to),
                           uplink_grant_allowed(t.to) ? "yes" : "no");
    }
    out += "# reachability from RRC_IDLE\n";
    for (RrcState s : kAllStates) {
        const auto& p = report.paths_from_idle[index_of(s)];
        out += fmt::format("{}: {}\n", to_string(s), p ? join_path(*p) : std::string("unreachable"));
    }
    out += "# checks\n";
    out += fmt::format("all_reachable_from_idle={}\n", report.all_reachable_from_idle);
    out += fmt::format("ee_uplink_safe={}\n", report.ee_uplink_safe);
    out += fmt::format("ee_uplink_resume_single_event={}\n", report.ee_uplink_resume_single_event);
    out += fmt::format("idle_to_ee_single_events={}\n", report.idle_to_ee_single_events);
    return out;
}

}  // namespace trsim::rrc
