#include "trsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "trsim/channel.hpp"
#include "trsim/errors.hpp"
#include "trsim/rng.hpp"

namespace trsim::sim {

namespace {

constexpr std::uint64_t kPlacementStream = 0x504C4143;  // "PLAC"
constexpr std::uint64_t kDeviceStreamBase = 0x44455600000000ULL;

// Co-located handsets would give an infinite path gain.
constexpr double kMinSeparationM = 1.0;

void check(std::vector<ConfigIssue>& issues, bool ok, const char* field, std::string message) {
    if (!ok) {
        issues.push_back({0, field, std::move(message)});
    }
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }
bool probability(double v) { return v >= 0.0 && v <= 1.0; }

double separation(const UserEquipment& a, const UserEquipment& b) {
    return std::max(std::hypot(a.x_m - b.x_m, a.y_m - b.y_m), kMinSeparationM);
}

double uplink_slot_fraction(const ScenarioConfig& cfg) {
    const frames::RadioFrame f = uplink_frame_context(cfg, false);
    const auto census = frames::slot_census(f);
    return static_cast<double>(census[frames::SlotKind::Uplink]) /
           static_cast<double>(census.total());
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
    std::vector<ConfigIssue> issues;
    check(issues, cfg.n_users > 0, "n_users", "must be > 0");
    check(issues, cfg.n_tr >= 0, "n_tr", "must be >= 0");
    if (cfg.n_users > 0 && cfg.n_tr > cfg.n_users) {
        issues.push_back({0, "n_tr",
                          fmt::format("n_tr ({}) must not exceed n_users ({})", cfg.n_tr,
                                      cfg.n_users)});
    }
    check(issues, cfg.n_slots > 0, "n_slots", "must be > 0");
    check(issues, positive(cfg.cell_radius_m), "cell_radius_m", "must be > 0");
    check(issues, positive(cfg.min_distance_m), "min_distance_m", "must be > 0");
    check(issues, cfg.min_distance_m < cfg.cell_radius_m, "min_distance_m",
          "must be below cell_radius_m");
    check(issues, positive(cfg.fixed_distance_m), "fixed_distance_m", "must be > 0");
    check(issues, cfg.mu >= 0 && cfg.mu <= frames::kMaxMu, "mu",
          fmt::format("must be in [0, {}]", frames::kMaxMu));
    if (cfg.duplex == DuplexMode::Tdd) {
        try {
            const auto pattern = frames::parse_tdd_pattern(cfg.tdd_pattern);
            (void)frames::build_tdd_frame(frames::make_numerology(0), pattern, false,
                                          cfg.superframe_subframe);
        } catch (const DomainError& e) {
            issues.push_back({0, "tdd_pattern", e.what()});
        }
    }
    check(issues, probability(cfg.ul_activity), "ul_activity", "must be in [0, 1]");
    check(issues, probability(cfg.dl_activity), "dl_activity", "must be in [0, 1]");
    check(issues, probability(cfg.always_on_fraction), "always_on_fraction", "must be in [0, 1]");
    check(issues, positive(cfg.freq_hz), "freq_hz", "must be > 0");
    check(issues, positive(cfg.bs_tx_power_w), "bs_tx_power_w", "must be > 0");
    check(issues, positive(cfg.ue_tx_power_w), "ue_tx_power_w", "must be > 0");
    check(issues, std::isfinite(cfg.noise_dbm), "noise_dbm", "must be finite");
    check(issues, std::isfinite(cfg.snr_threshold_db), "snr_threshold_db", "must be finite");
    check(issues, std::isfinite(cfg.switching.rss_threshold_dbm), "rss_threshold_dbm",
          "must be finite");
    check(issues, cfg.switching.hysteresis_db >= 0.0 && std::isfinite(cfg.switching.hysteresis_db),
          "hysteresis_db", "must be >= 0");
    check(issues, positive(cfg.observer_distance_m), "observer_distance_m", "must be > 0");
    check(issues, cfg.tr_residual_power_w >= 0.0 && std::isfinite(cfg.tr_residual_power_w),
          "tr_residual_power_w", "must be >= 0");
    check(issues, cfg.complexity_unit_cost >= 0.0 && std::isfinite(cfg.complexity_unit_cost),
          "complexity_unit_cost", "must be >= 0");
    for (const auto& s : cfg.standards) {
        try {
            exposure::validate(s);
            if (s.find_band(cfg.freq_hz) == nullptr) {
                issues.push_back({0, "standards." + s.name,
                                  fmt::format("no band covers freq_hz {:g}", cfg.freq_hz)});
            }
        } catch (const DomainError& e) {
            issues.push_back({0, "standards." + s.name, e.what()});
        }
    }
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

std::vector<UserEquipment> place_devices(const ScenarioConfig& cfg) {
    std::vector<UserEquipment> ues(static_cast<std::size_t>(cfg.n_users));
    Rng rng = Rng::stream(cfg.seed, kPlacementStream);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        UserEquipment& ue = ues[i];
        ue.id = static_cast<int>(i);
        ue.tx_power_w = cfg.ue_tx_power_w;
        ue.freq_hz = cfg.freq_hz;
        double r = cfg.fixed_distance_m;
        double theta = two_pi * static_cast<double>(i) / static_cast<double>(ues.size());
        if (cfg.placement == Placement::Uniform) {
            const double lo = cfg.min_distance_m * cfg.min_distance_m;
            const double hi = cfg.cell_radius_m * cfg.cell_radius_m;
            r = std::sqrt(rng.uniform(lo, hi));
            theta = rng.uniform(0.0, two_pi);
        }
        ue.x_m = r * std::cos(theta);
        ue.y_m = r * std::sin(theta);
        ue.distance_m = r;
    }

    std::vector<std::size_t> order(ues.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg.placement == Placement::Uniform) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ues[a].distance_m > ues[b].distance_m;
        });
    } else {
        std::reverse(order.begin(), order.end());
    }
    for (int k = 0; k < cfg.n_tr && k < cfg.n_users; ++k) {
        ues[order[static_cast<std::size_t>(k)]].tr_capable = true;
    }
    return ues;
}

frames::RadioFrame uplink_frame_context(const ScenarioConfig& cfg, bool tr_active) {
    const frames::Numerology num = frames::make_numerology(cfg.mu);
    if (cfg.duplex == DuplexMode::Fdd) {
        return frames::build_fdd_pair(num, tr_active).uplink;
    }
    return frames::build_tdd_frame(num, frames::parse_tdd_pattern(cfg.tdd_pattern), tr_active,
                                   cfg.superframe_subframe);
}

double SimResult::total_ul_interference_w() const {
    double s = 0.0;
    for (double v : ul_interference_w) {
        s += v;
    }
    return s;
}

SimResult run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);

    using trmode::Mode;
    using rrc::RrcEvent;
    using rrc::RrcState;

    SimResult res;
    res.devices = place_devices(cfg);
    auto& ues = res.devices;
    const std::size_t n = ues.size();
    const auto n_slots = static_cast<std::size_t>(cfg.n_slots);

    const double noise_w = channel::dbm_to_watts(cfg.noise_dbm);
    const double threshold_lin = channel::db_to_linear(cfg.snr_threshold_db);

    // Geometry is static: precompute mean gains.
    std::vector<double> bs_gain(n);
    std::vector<std::vector<double>> ue_gain(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        bs_gain[i] = channel::free_space_path_gain(ues[i].distance_m, cfg.freq_hz);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                ue_gain[i][j] = channel::free_space_path_gain(separation(ues[i], ues[j]), cfg.freq_hz);
            }
        }
    }

    const frames::RadioFrame frame_am = uplink_frame_context(cfg, false);
    const frames::RadioFrame frame_tr = uplink_frame_context(cfg, true);
    const int tr_frame_uplink = frames::slot_census(frame_tr)[frames::SlotKind::Uplink];
    const int slots_per_frame = frame_am.numerology.slots_per_frame();

    std::vector<Rng> streams;
    streams.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        streams.push_back(Rng::stream(cfg.seed, kDeviceStreamBase + i));
    }

    res.series.resize(n);
    for (auto& s : res.series) {
        s.rss_dbm.reserve(n_slots);
        s.sinr_db.reserve(n_slots);
        s.mode.reserve(n_slots);
    }
    res.ul_interference_w.reserve(n_slots);
    res.ul_active.reserve(n_slots);

    std::vector<double> dl_fading(n);
    std::vector<std::vector<double>> link_fading(n, std::vector<double>(n, 0.0));
    std::vector<double> ul_power(n);
    std::vector<double> radiated_sum(n, 0.0);
    long am_samples = 0, am_outages = 0, tr_samples = 0, tr_outages = 0;
    double complexity_sum = 0.0;

    auto apply = [&](long slot, UserEquipment& ue, RrcEvent ev) {
        const RrcState from = ue.rrc_state;
        ue.rrc_state = rrc::transition(from, ev);
        if (ue.rrc_state != from) {
            res.rrc_log.push_back({slot, ue.id, ev, from, ue.rrc_state});
        }
    };

    for (std::size_t t = 0; t < n_slots; ++t) {
        const long slot = static_cast<long>(t);
        const int frame_slot = static_cast<int>(t % static_cast<std::size_t>(slots_per_frame));

        // Phase 1: channel draws, switching, RRC, traffic.
        for (std::size_t i = 0; i < n; ++i) {
            UserEquipment& ue = ues[i];
            Rng& rng = streams[i];
            dl_fading[i] = channel::draw_fading_gain(rng);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    link_fading[i][j] = channel::draw_fading_gain(rng);
                }
            }
            const bool ul_want = rng.bernoulli(cfg.ul_activity);
            ue.dl_demand = rng.bernoulli(cfg.dl_activity);

            const double rss_w = cfg.bs_tx_power_w * bs_gain[i] * dl_fading[i];
            const double rss_dbm = channel::watts_to_dbm(rss_w);
            res.series[i].rss_dbm.push_back(rss_dbm);

            if (ue.tr_capable) {
                const Mode next = trmode::evaluate_switch(rss_dbm, cfg.switching, ue.mode);
                if (next != ue.mode) {
                    res.mode_log.push_back({slot, ue.id, ue.mode, next, rss_dbm});
                    ue.mode = next;
                    apply(slot, ue, next == Mode::ThermalRadiationMode ? RrcEvent::TrModeEnter
                                                                       : RrcEvent::TrModeExit);
                }
            }

            // TR devices generate no uplink traffic; the demand waits.
            ue.ul_demand = ul_want && trmode::uplink_enabled(ue.mode);
            if (ul_want && !ue.ul_demand) {
                ++res.blocked_ul_demands;
            }
            if (ue.ul_demand && !rrc::uplink_grant_allowed(ue.rrc_state)) {
                apply(slot, ue, RrcEvent::UplinkDataPending);
            }
            if (ue.dl_demand && ue.rrc_state == RrcState::EnergyEfficient) {
                apply(slot, ue, RrcEvent::DownlinkDataArrival);
                ++res.ee_downlink_arrivals;
            }
            res.series[i].mode.push_back(ue.mode);
        }

        // Phase 2: who radiates in the uplink this slot.
        int active = 0;
        double ul_at_bs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const UserEquipment& ue = ues[j];
            const bool tr = ue.mode == Mode::ThermalRadiationMode;
            if (tr) {
                res.tr_frame_uplink_slots += tr_frame_uplink;
            }
            ul_power[j] = 0.0;
            const bool enabled =
                trmode::uplink_enabled(ue.mode) && rrc::uplink_grant_allowed(ue.rrc_state);
            if (enabled) {
                ++active;
                const frames::RadioFrame& ctx = tr ? frame_tr : frame_am;
                if (ctx.slot(frame_slot) == frames::SlotKind::Uplink) {
                    ul_power[j] = ue.ul_demand ? ue.tx_power_w
                                               : cfg.always_on_fraction * ue.tx_power_w;
                }
            }
            ul_at_bs += ul_power[j] * bs_gain[j];
            radiated_sum[j] += tr ? cfg.tr_residual_power_w : ul_power[j];
        }
        res.ul_interference_w.push_back(ul_at_bs);
        res.ul_active.push_back(active);
        complexity_sum += exposure::complexity_metric(active, cfg.complexity_unit_cost);

        // Phase 3: downlink SINR with uplink-to-downlink interference.
        for (std::size_t i = 0; i < n; ++i) {
            double interference = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && ul_power[j] > 0.0) {
                    interference += ul_power[j] * ue_gain[i][j] * link_fading[i][j];
                }
            }
            const double signal = cfg.bs_tx_power_w * bs_gain[i] * dl_fading[i];
            const double s = signal / (interference + noise_w);
            res.series[i].sinr_db.push_back(channel::linear_to_db(s));
            const bool out = s < threshold_lin;
            if (ues[i].mode == Mode::ActiveMode) {
                ++am_samples;
                am_outages += out ? 1 : 0;
            } else {
                ++tr_samples;
                tr_outages += out ? 1 : 0;
            }
        }
    }

    auto cohort = [](long samples, long outages) {
        CohortOutage c;
        c.samples = samples;
        if (samples > 0) {
            c.outage = static_cast<double>(outages) / static_cast<double>(samples);
        }
        return c;
    };
    res.outage_am = cohort(am_samples, am_outages);
    res.outage_tr = cohort(tr_samples, tr_outages);
    res.complexity = complexity_sum / static_cast<double>(n_slots);

    // Exposure of the time-averaged emitters.
    std::vector<UserEquipment> emitters = ues;
    for (std::size_t i = 0; i < n; ++i) {
        emitters[i].mode = Mode::ActiveMode;
        emitters[i].tx_power_w = radiated_sum[i] / static_cast<double>(n_slots);
    }
    exposure::ExposureOptions opts;
    opts.observer_distance_m = cfg.observer_distance_m;
    res.exposure = exposure::network_exposure(emitters, cfg.standards, opts);
    return res;
}

std::vector<std::vector<double>> interference_to_noise(const ScenarioConfig& cfg,
                                                       std::span<const UserEquipment> devices) {
    const double noise_w = channel::dbm_to_watts(cfg.noise_dbm);
    const std::size_t n = devices.size();
    std::vector<std::vector<double>> inr(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                inr[i][j] = devices[j].tx_power_w *
                            channel::free_space_path_gain(separation(devices[i], devices[j]),
                                                          cfg.freq_hz) /
                            noise_w;
            }
        }
    }
    return inr;
}

std::vector<OutagePoint> outage_curve(const ScenarioConfig& cfg,
                                      std::span<const double> mean_snr_points_db) {
    if (mean_snr_points_db.empty()) {
        detail::throw_domain("outage_curve needs at least one mean SNR point");
    }
    validate(cfg);
    const auto ues = place_devices(cfg);
    const auto inr = interference_to_noise(cfg, ues);
    const double threshold = channel::db_to_linear(cfg.snr_threshold_db);
    const std::size_t n = ues.size();

    std::vector<OutagePoint> out;
    for (double snr_db : mean_snr_points_db) {
        if (!std::isfinite(snr_db)) {
            detail::throw_domain("mean SNR point must be finite");
        }
        const double mean = channel::db_to_linear(snr_db);
        double sum_am = 0.0;
        double sum_tr = 0.0;
        std::vector<double> all, am_only;
        for (std::size_t i = 0; i < n; ++i) {
            all.clear();
            am_only.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                all.push_back(inr[i][j]);
                if (!ues[j].tr_capable) {
                    am_only.push_back(inr[i][j]);
                }
            }
            sum_am += channel::outage_with_interferers(threshold, mean, all);
            sum_tr += channel::outage_with_interferers(threshold, mean, am_only);
        }
        out.push_back({snr_db, sum_am / static_cast<double>(n), sum_tr / static_cast<double>(n)});
    }
    return out;
}

exposure::ExposureReport steady_state_exposure(const ScenarioConfig& cfg, bool tr_enabled) {
    validate(cfg);
    auto ues = place_devices(cfg);
    const double duty = uplink_slot_fraction(cfg) *
                        (cfg.ul_activity + (1.0 - cfg.ul_activity) * cfg.always_on_fraction);
    for (auto& ue : ues) {
        ue.mode = tr_enabled && ue.tr_capable ? trmode::Mode::ThermalRadiationMode
                                              : trmode::Mode::ActiveMode;
        ue.tx_power_w *= duty;
    }
    exposure::ExposureOptions opts;
    opts.observer_distance_m = cfg.observer_distance_m;
    opts.tr_residual_power_w = cfg.tr_residual_power_w;
    return exposure::network_exposure(ues, cfg.standards, opts);
}

std::vector<GenerationDensity> generation_power_density_series(
    std::span<const GenerationConfig> generations) {
    std::vector<GenerationDensity> out;
    out.reserve(generations.size());
    for (const auto& g : generations) {
        out.push_back({g.label, steady_state_exposure(g.config, false).network_total_power_density,
                       steady_state_exposure(g.config, true).network_total_power_density});
    }
    return out;
}

}  // namespace trsim::sim
