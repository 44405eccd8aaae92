// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "trsim/channel.hpp"
#include "trsim/cli.hpp"
#include "trsim/config.hpp"
#include "trsim/exposure.hpp"
#include "trsim/frames.hpp"
#include "trsim/rng.hpp"
#include "trsim/rrc.hpp"
#include "trsim/sim.hpp"

using namespace trsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Cli {
    int code;
    std::string out;
    std::string err;
};

Cli trsim_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "trsim");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

const std::array<std::string, 5> kGenerations{"1G", "2G", "3G", "4G", "5G"};

// Published exposure ratios, one row per (standard, mode), 1G..5G.
const std::map<std::string, std::array<double, 5>> kTable{
    {"ICNIRP/AM", {0.2403, 0.361, 0.41, 0.481, 0.83}},
    {"ICNIRP/TR", {0.211, 0.3432, 0.3719, 0.4458, 0.6075}},
    {"IEEE C95/AM", {0.1848, 0.277, 0.31, 0.369, 0.6379}},
    {"IEEE C95/TR", {0.1622, 0.264, 0.286, 0.3429, 0.4673}},
};

// "standard/mode" -> ratio per generation, parsed from the exposure CSV.
std::map<std::string, std::map<std::string, double>> table_from_cli(std::string& detail) {
    std::map<std::string, std::map<std::string, double>> got;
    const auto r = trsim_cli({"exposure", "--fixture", TRSIM_DATA_DIR "/er_fixture.cfg"});
    if (r.code != 0) {
        detail = r.err;
        return got;
    }
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    const auto header = split(line, ',');
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        col[header[i]] = i;
    }
    while (std::getline(in, line)) {
        const auto f = split(line, ',');
        got[f[col["standard"]] + "/" + f[col["mode"]]][f[col["generation"]]] =
            std::stod(f[col["exposure_ratio"]]);
    }
    return got;
}

bool er_values(std::string& detail) {
    const auto t0 = Clock::now();
    const auto got = table_from_cli(detail);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    int cells = 0;
    for (const auto& [key, expected] : kTable) {
        for (std::size_t g = 0; g < kGenerations.size(); ++g) {
            const auto row = got.find(key);
            if (row == got.end() || !row->second.contains(kGenerations[g])) {
                detail = fmt::format("missing cell {} {}", key, kGenerations[g]);
                return false;
            }
            worst = std::max(worst, std::abs(row->second.at(kGenerations[g]) - expected[g]));
            ++cells;
        }
    }
    detail = fmt::format("{} cells, max |error| {:.3g}, {:.3f} s", cells, worst, elapsed);
    return cells == 20 && worst <= 1e-4 && elapsed < 1.0;
}

bool er_orderings(std::string& detail) {
    const auto got = table_from_cli(detail);
    int checks = 0;
    for (const std::string std_name : {"ICNIRP", "IEEE C95"}) {
        const auto& am = got.at(std_name + "/AM");
        const auto& tr = got.at(std_name + "/TR");
        for (std::size_t g = 0; g < kGenerations.size(); ++g) {
            const auto& gen = kGenerations[g];
            if (!(tr.at(gen) < am.at(gen))) {
                detail = fmt::format("{} {}: TR {} not below AM {}", std_name, gen, tr.at(gen),
                                     am.at(gen));
                return false;
            }
            ++checks;
            if (g > 0) {
                const auto& prev = kGenerations[g - 1];
                if (!(am.at(prev) < am.at(gen)) || !(tr.at(prev) < tr.at(gen))) {
                    detail = fmt::format("{}: not increasing from {} to {}", std_name, prev, gen);
                    return false;
                }
                checks += 2;
            }
        }
    }
    detail = fmt::format("{} strict comparisons hold", checks);
    return true;
}

bool outage_oracle(std::string& detail) {
    const auto t0 = Clock::now();
    const std::uint64_t n = 1'000'000;
    bool ok = true;
    std::string parts;
    std::uint64_t seed = 11;
    for (double ratio : {0.1, 1.0, 10.0}) {
        const double p = channel::outage_analytic(ratio, 1.0);
        const double mc = channel::outage_monte_carlo(ratio, 1.0, n, seed++);
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        const double z = std::abs(mc - p) / sigma;
        ok = ok && z <= 3.0;
        parts += fmt::format(" theta/mean={} z={:.2f};", ratio, z);
    }
    const double at_one = channel::outage_analytic(1.0, 1.0);
    ok = ok && std::abs(at_one - 0.6321) <= 0.002;
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 10.0;
    detail = fmt::format("{} analytic(1,1)={:.6f}, {:.2f} s", parts, at_one, elapsed);
    return ok;
}

bool outage_trend(std::string& detail) {
    const auto cfg = config::parse_config(config::read_file(TRSIM_DATA_DIR "/cell_50_users.cfg"));
    const int am_interferers = cfg.n_users - cfg.n_tr - 1;
    std::vector<double> points;
    for (int db = 30; db <= 100; db += 5) {
        points.push_back(db);
    }
    const auto curve = sim::outage_curve(cfg, points);
    for (const auto& p : curve) {
        if (!(p.outage_tr < p.outage_am)) {
            detail = fmt::format("at {} dB TR {} not below AM {}", p.mean_snr_db, p.outage_tr,
                                 p.outage_am);
            return false;
        }
    }
    // Interference-limited: the AM curve sits well above the noise-only one.
    const double noise_only = channel::outage_analytic(
        channel::db_to_linear(cfg.snr_threshold_db), channel::db_to_linear(points.front()));
    detail = fmt::format("{} points, {} AM interferers per victim, AM {:.4f} vs noise-only {:.2e} at {} dB",
                         curve.size(), am_interferers, curve.front().outage_am, noise_only,
                         points.front());
    return am_interferers >= 2 && curve.front().outage_am > 10.0 * noise_only;
}

sim::ScenarioConfig ratio_scenario(int n_tr) {
    sim::ScenarioConfig c;
    c.n_users = 50;
    c.n_tr = n_tr;
    c.n_slots = 100;
    c.placement = sim::Placement::Fixed;
    c.fixed_distance_m = 100.0;
    c.ul_activity = 1.0;
    c.switching = {1000.0, 3.0};  // every TR-capable device switches at once
    return c;
}

bool scenario_ratio(std::string& detail) {
    const auto base = sim::run_scenario(ratio_scenario(0));
    const auto mixed = sim::run_scenario(ratio_scenario(20));
    const double ri = mixed.total_ul_interference_w() / base.total_ul_interference_w();
    const double rd =
        mixed.exposure.network_total_power_density / base.exposure.network_total_power_density;
    detail = fmt::format("interference ratio {:.6f}, density ratio {:.6f}", ri, rd);
    return std::abs(ri / 0.6 - 1.0) <= 1e-12 && std::abs(rd / 0.6 - 1.0) <= 1e-12;
}

bool frame_invariants(std::string& detail) {
    Rng rng(20240611);
    int cases = 0;
    for (int mu = 0; mu <= frames::kMaxMu; ++mu) {
        const auto num = frames::make_numerology(mu);
        for (int sw = 0; sw < 10; ++sw) {
            const auto off = frames::build_fdd_pair(num, false, sw);
            const auto on = frames::build_fdd_pair(num, true, sw);
            for (const auto* f : {&off.downlink, &off.uplink, &on.downlink, &on.uplink}) {
                if (!frames::validate_frame(*f).empty()) {
                    detail = fmt::format("fdd mu={} switch={} invalid", mu, sw);
                    return false;
                }
            }
            if (frames::slot_census(on.uplink)[frames::SlotKind::Uplink] != 0 ||
                frames::slot_census(on.downlink)[frames::SlotKind::Downlink] !=
                    frames::slot_census(off.downlink)[frames::SlotKind::Downlink]) {
                detail = fmt::format("fdd mu={} switch={} census", mu, sw);
                return false;
            }
            ++cases;
        }
    }
    const std::string alphabet = "DUS";
    for (int trial = 0; trial < 1000; ++trial) {
        std::string text(10, 'D');
        for (char& c : text) {
            c = alphabet[static_cast<std::size_t>(rng.uniform() * 3.0)];
        }
        const int super = static_cast<int>(rng.uniform() * 10.0);
        text[static_cast<std::size_t>(super)] = 'S';
        const int mu = static_cast<int>(rng.uniform() * (frames::kMaxMu + 1));
        const auto num = frames::make_numerology(mu);
        const auto pattern = frames::parse_tdd_pattern(text);
        const auto off = frames::build_tdd_frame(num, pattern, false, super);
        const auto on = frames::build_tdd_frame(num, pattern, true, super);
        const auto c_off = frames::slot_census(off);
        const auto c_on = frames::slot_census(on);
        const bool ok = frames::validate_frame(off).empty() && frames::validate_frame(on).empty() &&
                        c_on[frames::SlotKind::Uplink] == 0 &&
                        c_on[frames::SlotKind::Hold] == 1 && c_on[frames::SlotKind::Release] == 0 &&
                        c_off[frames::SlotKind::Release] == 1 && c_off[frames::SlotKind::Hold] == 0 &&
                        c_on[frames::SlotKind::Downlink] == c_off[frames::SlotKind::Downlink];
        if (!ok) {
            detail = fmt::format("tdd pattern {} superframe {} mu={} failed", text, super, mu);
            return false;
        }
        ++cases;
    }
    detail = fmt::format("{} frame cases", cases);
    return cases >= 1000;
}

bool rrc_model_check(std::string& detail) {
    using rrc::RrcState;
    int pairs = 0;
    for (auto s : rrc::kAllStates) {
        for (auto e : rrc::kAllEvents) {
            (void)rrc::transition(s, e);
            ++pairs;
        }
    }
    if (rrc::uplink_grant_allowed(RrcState::EnergyEfficient)) {
        detail = "EE grants uplink";
        return false;
    }
    Rng rng(4242);
    long ee_steps = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto s = rrc::kAllStates[static_cast<std::size_t>(rng.uniform() * rrc::kAllStates.size())];
        for (int step = 0; step < 100; ++step) {
            const auto e =
                rrc::kAllEvents[static_cast<std::size_t>(rng.uniform() * rrc::kAllEvents.size())];
            s = rrc::transition(s, e);
            if (s == RrcState::EnergyEfficient) {
                ++ee_steps;
                if (rrc::uplink_grant_allowed(s)) {
                    detail = "uplink granted in EE during a trace";
                    return false;
                }
            }
        }
    }
    const bool resume = rrc::transition(RrcState::EnergyEfficient, rrc::RrcEvent::UplinkDataPending) ==
                        RrcState::Connected;
    detail = fmt::format("{} pairs, 10000 traces x 100 ({} EE steps), EE+UplinkDataPending -> {}",
                         pairs, ee_steps,
                         rrc::to_string(rrc::transition(RrcState::EnergyEfficient,
                                                        rrc::RrcEvent::UplinkDataPending)));
    return pairs == 36 && resume && ee_steps > 0 && rrc::check_reachability().ee_uplink_safe;
}

bool determinism(std::string& detail) {
    const std::string cfg = TRSIM_DATA_DIR "/cell_50_users.cfg";
    const auto t0 = Clock::now();
    const auto a = trsim_cli({"run", "--config", cfg});
    const auto b = trsim_cli({"run", "--config", cfg});
    detail = fmt::format("{} bytes per run, {:.2f} s for both", a.out.size(), seconds_since(t0));
    return a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out;
}

bool complexity_trend(std::string& detail) {
    const double tr = exposure::complexity_metric(30);
    const double am = exposure::complexity_metric(50);
    detail = fmt::format("{} < {}", tr, am);
    return tr == 435.0 && am == 1225.0 && tr < am;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria{
        {"1 er-values", er_values},
        {"2 er-orderings", er_orderings},
        {"3 outage-oracle", outage_oracle},
        {"4 outage-trend", outage_trend},
        {"5 scenario-ratio", scenario_ratio},
        {"6 frame-invariants", frame_invariants},
        {"7 rrc-model-check", rrc_model_check},
        {"8 determinism", determinism},
        {"9 complexity-trend", complexity_trend},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = check(detail);
        } catch (const std::exception& e) {
            detail = fmt::format("exception: {}", e.what());
        }
        fmt::print("{} {}: {}\n", ok ? "PASS" : "FAIL", name, detail);
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
