#include "trsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "trsim/channel.hpp"
#include "trsim/errors.hpp"
#include "trsim/rng.hpp"

using namespace trsim;
using namespace trsim::sim;
using trsim::trmode::Mode;

namespace {

exposure::ExposureStandard flat_standard() {
    return {"FLAT", {{1e8, 1e11, 61.0, "test"}}};
}

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.n_users = 12;
    c.n_tr = 5;
    c.n_slots = 200;
    c.seed = 7;
    c.standards = {flat_standard()};
    return c;
}

// Every TR-capable device switches in the first slot and never returns.
ScenarioConfig fixed_ratio_config(int n_tr) {
    ScenarioConfig c;
    c.n_users = 50;
    c.n_tr = n_tr;
    c.n_slots = 100;
    c.placement = Placement::Fixed;
    c.fixed_distance_m = 100.0;
    c.ul_activity = 1.0;
    c.switching = {1000.0, 3.0};
    c.standards = {flat_standard()};
    return c;
}

}  // namespace

TEST(Placement, UniformWithinAnnulusAndTrAtEdge) {
    auto c = small_config();
    c.n_users = 200;
    c.n_tr = 80;
    const auto ues = place_devices(c);
    ASSERT_EQ(ues.size(), 200u);
    double min_tr = 1e300, max_legacy = 0.0;
    for (const auto& ue : ues) {
        EXPECT_GE(ue.distance_m, c.min_distance_m);
        EXPECT_LE(ue.distance_m, c.cell_radius_m);
        EXPECT_NEAR(std::hypot(ue.x_m, ue.y_m), ue.distance_m, 1e-9);
        if (ue.tr_capable) {
            min_tr = std::min(min_tr, ue.distance_m);
        } else {
            max_legacy = std::max(max_legacy, ue.distance_m);
        }
    }
    EXPECT_EQ(std::count_if(ues.begin(), ues.end(), [](const auto& u) { return u.tr_capable; }), 80);
    EXPECT_GE(min_tr, max_legacy);
}

TEST(Validate, RejectsBadConfigs) {
    auto c = small_config();
    c.n_tr = c.n_users + 1;
    try {
        validate(c);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        ASSERT_EQ(e.issues().size(), 1u);
        EXPECT_NE(e.issues()[0].message.find("n_users"), std::string::npos);
    }
    c = small_config();
    c.ul_activity = 1.5;
    EXPECT_THROW(run_scenario(c), ConfigError);
    c = small_config();
    c.duplex = DuplexMode::Tdd;
    c.tdd_pattern = "DDDDDDDDDD";
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(RunScenario, DeterministicForSameSeed) {
    const auto c = small_config();
    const auto a = run_scenario(c);
    const auto b = run_scenario(c);
    ASSERT_EQ(a.series.size(), b.series.size());
    for (std::size_t i = 0; i < a.series.size(); ++i) {
        EXPECT_EQ(a.series[i].rss_dbm, b.series[i].rss_dbm);
        EXPECT_EQ(a.series[i].sinr_db, b.series[i].sinr_db);
        EXPECT_EQ(a.series[i].mode, b.series[i].mode);
    }
    EXPECT_EQ(a.ul_interference_w, b.ul_interference_w);
    EXPECT_EQ(a.mode_log.size(), b.mode_log.size());
    EXPECT_EQ(a.rrc_log.size(), b.rrc_log.size());
    EXPECT_EQ(a.exposure.network_total_power_density, b.exposure.network_total_power_density);

    auto other = c;
    other.seed = 8;
    EXPECT_NE(run_scenario(other).series[0].rss_dbm, a.series[0].rss_dbm);
}

TEST(RunScenario, SeriesLengths) {
    const auto c = small_config();
    const auto r = run_scenario(c);
    ASSERT_EQ(r.series.size(), static_cast<std::size_t>(c.n_users));
    for (const auto& s : r.series) {
        EXPECT_EQ(s.rss_dbm.size(), static_cast<std::size_t>(c.n_slots));
        EXPECT_EQ(s.sinr_db.size(), static_cast<std::size_t>(c.n_slots));
        EXPECT_EQ(s.mode.size(), static_cast<std::size_t>(c.n_slots));
    }
    EXPECT_EQ(r.ul_interference_w.size(), static_cast<std::size_t>(c.n_slots));
    EXPECT_EQ(r.ul_active.size(), static_cast<std::size_t>(c.n_slots));
    EXPECT_EQ(r.outage_am.samples + r.outage_tr.samples, c.n_users * c.n_slots);
}

TEST(RunScenario, SingleUserSinrIsSnr) {
    auto c = small_config();
    c.n_users = 1;
    c.n_tr = 0;
    const auto r = run_scenario(c);
    for (std::size_t t = 0; t < r.series[0].sinr_db.size(); ++t) {
        EXPECT_NEAR(r.series[0].sinr_db[t], r.series[0].rss_dbm[t] - c.noise_dbm, 1e-9);
    }
}

TEST(RunScenario, TrDevicesNeverTransmit) {
    auto c = fixed_ratio_config(50);
    const auto r = run_scenario(c);
    for (std::size_t t = 0; t < r.ul_interference_w.size(); ++t) {
        EXPECT_EQ(r.ul_interference_w[t], 0.0);
        EXPECT_EQ(r.ul_active[t], 0);
    }
    EXPECT_EQ(r.exposure.network_total_power_density, 0.0);
    EXPECT_EQ(r.tr_frame_uplink_slots, 0);
    EXPECT_EQ(r.blocked_ul_demands, c.n_users * c.n_slots);
}

TEST(RunScenario, NoDemandNoAlwaysOnMeansSilence) {
    auto c = small_config();
    c.ul_activity = 0.0;
    c.always_on_fraction = 0.0;
    const auto r = run_scenario(c);
    EXPECT_EQ(r.total_ul_interference_w(), 0.0);
}

TEST(RunScenario, UplinkOnlyInUplinkSlots) {
    auto c = small_config();
    c.duplex = DuplexMode::Tdd;
    c.mu = 1;
    const auto r = run_scenario(c);
    const auto frame = uplink_frame_context(c, false);
    const int spf = frame.numerology.slots_per_frame();
    double total = 0.0;
    for (std::size_t t = 0; t < r.ul_interference_w.size(); ++t) {
        if (frame.slot(static_cast<int>(t % static_cast<std::size_t>(spf))) !=
            frames::SlotKind::Uplink) {
            EXPECT_EQ(r.ul_interference_w[t], 0.0) << "slot " << t;
        }
        total += r.ul_interference_w[t];
    }
    EXPECT_GT(total, 0.0);
    EXPECT_EQ(r.tr_frame_uplink_slots, 0);
}

TEST(RunScenario, SwitchingIsCausal) {
    auto c = small_config();
    c.n_users = 30;
    c.n_tr = 30;
    c.n_slots = 500;
    c.switching = {-48.0, 3.0};
    const auto r = run_scenario(c);
    ASSERT_FALSE(r.mode_log.empty());
    const double thr = c.switching.rss_threshold_dbm, h = c.switching.hysteresis_db;
    for (const auto& m : r.mode_log) {
        const auto& s = r.series[static_cast<std::size_t>(m.device)];
        EXPECT_EQ(m.rss_dbm, s.rss_dbm[static_cast<std::size_t>(m.slot)]);
        EXPECT_EQ(s.mode[static_cast<std::size_t>(m.slot)], m.to);
        if (m.to == Mode::ThermalRadiationMode) {
            EXPECT_LT(m.rss_dbm, thr - h);
        } else {
            EXPECT_GT(m.rss_dbm, thr + h);
        }
    }
    // Every TrModeEnter in the RRC log follows a mode change in the same slot.
    for (const auto& e : r.rrc_log) {
        if (e.event == rrc::RrcEvent::TrModeEnter) {
            const auto& s = r.series[static_cast<std::size_t>(e.device)];
            EXPECT_LT(s.rss_dbm[static_cast<std::size_t>(e.slot)], thr - h);
            EXPECT_EQ(e.to, rrc::RrcState::EnergyEfficient);
        }
    }
}

TEST(RunScenario, ExposureConservation) {
    const auto r = run_scenario(small_config());
    double sum = 0.0;
    for (const auto& d : r.exposure.per_device) {
        sum += d.power_density_w_m2;
    }
    EXPECT_GT(sum, 0.0);
    EXPECT_NEAR(r.exposure.network_total_power_density / sum, 1.0, 1e-12);
}

TEST(RunScenario, TwentyOfFiftyInTrGivesSixTenths) {
    const auto all_am = run_scenario(fixed_ratio_config(0));
    const auto mixed = run_scenario(fixed_ratio_config(20));
    EXPECT_NEAR(mixed.total_ul_interference_w() / all_am.total_ul_interference_w(), 0.6, 1e-12);
    EXPECT_NEAR(mixed.exposure.network_total_power_density /
                    all_am.exposure.network_total_power_density,
                0.6, 1e-12);
    EXPECT_LT(mixed.complexity, all_am.complexity);
}

TEST(OutageCurve, TrNeverWorseAndConvergesForOneUser) {
    auto c = small_config();
    const std::vector<double> pts{0.0, 40.0, 60.0, 80.0, 100.0, 200.0};
    const auto curve = outage_curve(c, pts);
    ASSERT_EQ(curve.size(), pts.size());
    for (const auto& p : curve) {
        EXPECT_LE(p.outage_tr, p.outage_am);
        EXPECT_GE(p.outage_tr, 0.0);
        EXPECT_LE(p.outage_am, 1.0);
    }
    EXPECT_LT(curve.back().outage_am, 1e-6);
    for (std::size_t k = 1; k < curve.size(); ++k) {
        EXPECT_LE(curve[k].outage_am, curve[k - 1].outage_am);
    }

    c.n_users = 1;
    c.n_tr = 0;
    for (const auto& p : outage_curve(c, pts)) {
        EXPECT_EQ(p.outage_tr, p.outage_am);
        EXPECT_NEAR(p.outage_am, -std::expm1(-1.0 / channel::db_to_linear(p.mean_snr_db)), 1e-15);
    }
    EXPECT_THROW(outage_curve(c, {}), DomainError);
}

// Direct simulation of faded desired and interfering links, with and without
// the TR-capable interferers.
TEST(OutageCurve, MatchesDirectSimulation) {
    auto c = small_config();
    c.n_users = 8;
    c.n_tr = 3;
    const double snr_db = 75.0;
    const auto curve = outage_curve(c, std::vector<double>{snr_db});
    const auto ues = place_devices(c);
    const auto inr = interference_to_noise(c, ues);
    const double mean = channel::db_to_linear(snr_db);
    const double thr = channel::db_to_linear(c.snr_threshold_db);

    Rng rng(2024);
    const int trials = 100000;
    long out_am = 0, out_tr = 0;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        for (int t = 0; t < trials; ++t) {
            const double s = mean * rng.exponential();
            double i_all = 1.0, i_legacy = 1.0;
            for (std::size_t j = 0; j < ues.size(); ++j) {
                if (j == i) {
                    continue;
                }
                const double x = inr[i][j] * rng.exponential();
                i_all += x;
                if (!ues[j].tr_capable) {
                    i_legacy += x;
                }
            }
            out_am += s / i_all < thr;
            out_tr += s / i_legacy < thr;
        }
    }
    const double n = static_cast<double>(trials) * static_cast<double>(ues.size());
    const double p_am = static_cast<double>(out_am) / n;
    const double p_tr = static_cast<double>(out_tr) / n;
    const double tol_am = 4.0 * std::sqrt(curve[0].outage_am * (1 - curve[0].outage_am) / n) + 1e-4;
    const double tol_tr = 4.0 * std::sqrt(curve[0].outage_tr * (1 - curve[0].outage_tr) / n) + 1e-4;
    EXPECT_NEAR(p_am, curve[0].outage_am, tol_am);
    EXPECT_NEAR(p_tr, curve[0].outage_tr, tol_tr);
    EXPECT_LT(p_tr, p_am);
    EXPECT_LT(curve[0].outage_tr, curve[0].outage_am);
}

TEST(GenerationSeries, FlatForIdenticalConfigsAndSixTenths) {
    auto c = fixed_ratio_config(20);
    std::vector<GenerationConfig> gens{{"a", c}, {"b", c}, {"c", c}};
    const auto series = generation_power_density_series(gens);
    ASSERT_EQ(series.size(), 3u);
    for (const auto& g : series) {
        EXPECT_EQ(g.density_am, series[0].density_am);
        EXPECT_EQ(g.density_tr, series[0].density_tr);
        EXPECT_LT(g.density_tr, g.density_am);
        EXPECT_NEAR(g.density_tr / g.density_am, 0.6, 1e-12);
    }
    EXPECT_EQ(series[1].label, "b");
}

TEST(SteadyState, ResidualPowerRaisesTrDensity) {
    auto c = fixed_ratio_config(20);
    const double base = steady_state_exposure(c, true).network_total_power_density;
    c.tr_residual_power_w = 0.001;
    EXPECT_GT(steady_state_exposure(c, true).network_total_power_density, base);
    EXPECT_EQ(steady_state_exposure(c, false).network_total_power_density,
              steady_state_exposure(fixed_ratio_config(20), false).network_total_power_density);
}
