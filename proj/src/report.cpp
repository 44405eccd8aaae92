#include "trsim/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

namespace trsim::report {

namespace {

using nlohmann::ordered_json;

void line(std::string& out, const ordered_json& j) {
    out += j.dump();
    out += '\n';
}

// JSON has no NaN/inf; non-finite values become null.
ordered_json num(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

std::string opt_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

ordered_json opt_num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

void exposure_csv(std::string& out, const exposure::ExposureReport& r) {
    out += "device,power_density_w_m2,e_field_v_per_m";
    for (const auto& s : r.standards) {
        out += ",er:" + s;
    }
    out += '\n';
    for (const auto& d : r.per_device) {
        out += fmt::format("{},{},{}", d.device_id, number(d.power_density_w_m2),
                           number(d.e_field_v_per_m));
        for (double er : d.er_per_standard) {
            out += "," + number(er);
        }
        out += '\n';
    }
    out += fmt::format("network,{},{}", number(r.network_total_power_density),
                       number(r.network_e_field_v_per_m));
    for (double er : r.network_er_per_standard) {
        out += "," + number(er);
    }
    out += '\n';
}

void exposure_json(std::string& out, const exposure::ExposureReport& r) {
    for (const auto& d : r.per_device) {
        ordered_json j;
        j["record"] = "device_exposure";
        j["device"] = d.device_id;
        j["power_density_w_m2"] = num(d.power_density_w_m2);
        j["e_field_v_per_m"] = num(d.e_field_v_per_m);
        ordered_json er = ordered_json::object();
        for (std::size_t k = 0; k < r.standards.size(); ++k) {
            er[r.standards[k]] = num(d.er_per_standard[k]);
        }
        j["er"] = er;
        line(out, j);
    }
    ordered_json j;
    j["record"] = "network_exposure";
    j["power_density_w_m2"] = num(r.network_total_power_density);
    j["e_field_v_per_m"] = num(r.network_e_field_v_per_m);
    ordered_json er = ordered_json::object();
    for (std::size_t k = 0; k < r.standards.size(); ++k) {
        er[r.standards[k]] = num(r.network_er_per_standard[k]);
    }
    j["er"] = er;
    line(out, j);
}

}  // namespace

std::string number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.12g}", v);
}

std::string emit_run(const sim::ScenarioConfig& cfg, const sim::SimResult& r, Format format) {
    std::string out;
    const auto n_slots = r.ul_interference_w.size();
    if (format == Format::Csv) {
        out += "# section summary\nkey,value\n";
        auto kv = [&out](std::string_view k, const std::string& v) {
            out += fmt::format("{},{}\n", k, v);
        };
        kv("n_users", std::to_string(cfg.n_users));
        kv("n_tr", std::to_string(cfg.n_tr));
        kv("n_slots", std::to_string(cfg.n_slots));
        kv("seed", std::to_string(cfg.seed));
        kv("outage_am", opt_number(r.outage_am.outage));
        kv("outage_am_samples", std::to_string(r.outage_am.samples));
        kv("outage_tr", opt_number(r.outage_tr.outage));
        kv("outage_tr_samples", std::to_string(r.outage_tr.samples));
        kv("complexity", number(r.complexity));
        kv("total_ul_interference_w", number(r.total_ul_interference_w()));
        kv("network_power_density_w_m2", number(r.exposure.network_total_power_density));
        kv("mode_changes", std::to_string(r.mode_log.size()));
        kv("rrc_transitions", std::to_string(r.rrc_log.size()));
        kv("blocked_ul_demands", std::to_string(r.blocked_ul_demands));
        kv("ee_downlink_arrivals", std::to_string(r.ee_downlink_arrivals));
        kv("tr_frame_uplink_slots", std::to_string(r.tr_frame_uplink_slots));

        out += "\n# section devices\ndevice,x_m,y_m,distance_m,tr_capable,final_mode,final_rrc_state\n";
        for (const auto& ue : r.devices) {
            out += fmt::format("{},{},{},{},{},{},{}\n", ue.id, number(ue.x_m), number(ue.y_m),
                               number(ue.distance_m), ue.tr_capable ? 1 : 0, trmode::to_string(ue.mode),
                               rrc::to_string(ue.rrc_state));
        }

        out += "\n# section uplink\nslot,ul_active,ul_interference_w\n";
        for (std::size_t t = 0; t < n_slots; ++t) {
            out += fmt::format("{},{},{}\n", t, r.ul_active[t], number(r.ul_interference_w[t]));
        }

        out += "\n# section slots\nslot,device,mode,rss_dbm,sinr_db\n";
        for (std::size_t t = 0; t < n_slots; ++t) {
            for (std::size_t i = 0; i < r.series.size(); ++i) {
                const auto& s = r.series[i];
                out += fmt::format("{},{},{},{},{}\n", t, i, trmode::to_string(s.mode[t]),
                                   number(s.rss_dbm[t]), number(s.sinr_db[t]));
            }
        }

        out += "\n# section mode_changes\nslot,device,from,to,rss_dbm\n";
        for (const auto& m : r.mode_log) {
            out += fmt::format("{},{},{},{},{}\n", m.slot, m.device, trmode::to_string(m.from),
                               trmode::to_string(m.to), number(m.rss_dbm));
        }

        out += "\n# section rrc_events\nslot,device,event,from,to\n";
        for (const auto& e : r.rrc_log) {
            out += fmt::format("{},{},{},{},{}\n", e.slot, e.device, rrc::to_string(e.event),
                               rrc::to_string(e.from), rrc::to_string(e.to));
        }

        out += "\n# section exposure\n";
        exposure_csv(out, r.exposure);
        return out;
    }

    ordered_json summary;
    summary["record"] = "summary";
    summary["n_users"] = cfg.n_users;
    summary["n_tr"] = cfg.n_tr;
    summary["n_slots"] = cfg.n_slots;
    summary["seed"] = cfg.seed;
    summary["outage_am"] = opt_num(r.outage_am.outage);
    summary["outage_am_samples"] = r.outage_am.samples;
    summary["outage_tr"] = opt_num(r.outage_tr.outage);
    summary["outage_tr_samples"] = r.outage_tr.samples;
    summary["complexity"] = num(r.complexity);
    summary["total_ul_interference_w"] = num(r.total_ul_interference_w());
    summary["network_power_density_w_m2"] = num(r.exposure.network_total_power_density);
    summary["mode_changes"] = r.mode_log.size();
    summary["rrc_transitions"] = r.rrc_log.size();
    summary["blocked_ul_demands"] = r.blocked_ul_demands;
    summary["ee_downlink_arrivals"] = r.ee_downlink_arrivals;
    summary["tr_frame_uplink_slots"] = r.tr_frame_uplink_slots;
    line(out, summary);
    for (const auto& ue : r.devices) {
        ordered_json j;
        j["record"] = "device";
        j["device"] = ue.id;
        j["x_m"] = num(ue.x_m);
        j["y_m"] = num(ue.y_m);
        j["distance_m"] = num(ue.distance_m);
        j["tr_capable"] = ue.tr_capable;
        j["final_mode"] = trmode::to_string(ue.mode);
        j["final_rrc_state"] = rrc::to_string(ue.rrc_state);
        line(out, j);
    }
    for (std::size_t t = 0; t < n_slots; ++t) {
        ordered_json j;
        j["record"] = "uplink";
        j["slot"] = t;
        j["ul_active"] = r.ul_active[t];
        j["ul_interference_w"] = num(r.ul_interference_w[t]);
        line(out, j);
    }
    for (std::size_t t = 0; t < n_slots; ++t) {
        for (std::size_t i = 0; i < r.series.size(); ++i) {
            const auto& s = r.series[i];
            ordered_json j;
            j["record"] = "slot";
            j["slot"] = t;
            j["device"] = i;
            j["mode"] = trmode::to_string(s.mode[t]);
            j["rss_dbm"] = num(s.rss_dbm[t]);
            j["sinr_db"] = num(s.sinr_db[t]);
            line(out, j);
        }
    }
    for (const auto& m : r.mode_log) {
        ordered_json j;
        j["record"] = "mode_change";
        j["slot"] = m.slot;
        j["device"] = m.device;
        j["from"] = trmode::to_string(m.from);
        j["to"] = trmode::to_string(m.to);
        j["rss_dbm"] = num(m.rss_dbm);
        line(out, j);
    }
    for (const auto& e : r.rrc_log) {
        ordered_json j;
        j["record"] = "rrc_event";
        j["slot"] = e.slot;
        j["device"] = e.device;
        j["event"] = rrc::to_string(e.event);
        j["from"] = rrc::to_string(e.from);
        j["to"] = rrc::to_string(e.to);
        line(out, j);
    }
    exposure_json(out, r.exposure);
    return out;
}

std::string emit_outage(std::span<const sim::OutagePoint> curve, Format format) {
    std::string out;
    if (format == Format::Csv) {
        out += "mean_snr_db,outage_am,outage_tr\n";
        for (const auto& p : curve) {
            out += fmt::format("{},{},{}\n", number(p.mean_snr_db), number(p.outage_am),
                               number(p.outage_tr));
        }
        return out;
    }
    for (const auto& p : curve) {
        ordered_json j;
        j["record"] = "outage";
        j["mean_snr_db"] = num(p.mean_snr_db);
        j["outage_am"] = num(p.outage_am);
        j["outage_tr"] = num(p.outage_tr);
        line(out, j);
    }
    return out;
}

std::string emit_exposure(const exposure::ExposureReport& report, Format format) {
    std::string out;
    if (format == Format::Csv) {
        exposure_csv(out, report);
    } else {
        exposure_json(out, report);
    }
    return out;
}

std::string emit_probes(std::span<const exposure::ProbeResult> results, Format format) {
    std::string out;
    if (format == Format::Csv) {
        out += "probe,generation,mode,standard,freq_hz,power_density_w_m2,e_field_v_per_m,"
               "exposure_ratio\n";
        for (const auto& r : results) {
            out += fmt::format("{},{},{},{},{},{},{},{}\n", r.probe.id, r.probe.generation,
                               trmode::to_string(r.probe.mode), r.probe.standard,
                               number(r.probe.freq_hz), number(r.probe.power_density_w_m2),
                               number(r.e_field_v_per_m), number(r.exposure_ratio));
        }
        return out;
    }
    for (const auto& r : results) {
        ordered_json j;
        j["record"] = "probe";
        j["probe"] = r.probe.id;
        j["generation"] = r.probe.generation;
        j["mode"] = trmode::to_string(r.probe.mode);
        j["standard"] = r.probe.standard;
        j["freq_hz"] = num(r.probe.freq_hz);
        j["power_density_w_m2"] = num(r.probe.power_density_w_m2);
        j["e_field_v_per_m"] = num(r.e_field_v_per_m);
        j["exposure_ratio"] = num(r.exposure_ratio);
        line(out, j);
    }
    return out;
}

std::string emit_frames(std::span<const frames::RadioFrame> frames, Format format) {
    std::string out;
    for (const auto& f : frames) {
        if (format == Format::Csv) {
            out += fmt::format("# frame duplex={} mu={} tr={}\n", frames::to_string(f.duplex),
                               f.numerology.mu, f.tr_active ? "on" : "off");
            out += frames::dump_frame(f);
            continue;
        }
        for (std::size_t i = 0; i < f.subframes.size(); ++i) {
            std::string codes;
            for (auto k : f.subframes[i]) {
                codes += frames::slot_code(k);
            }
            ordered_json j;
            j["record"] = "subframe";
            j["duplex"] = frames::to_string(f.duplex);
            j["mu"] = f.numerology.mu;
            j["tr_active"] = f.tr_active;
            j["subframe"] = i;
            j["slots"] = codes;
            line(out, j);
        }
    }
    return out;
}

std::string emit_rrc(const rrc::ReachabilityReport& report, Format format) {
    if (format == Format::Csv) {
        return rrc::format_report(report);
    }
    std::string out;
    for (const auto& t : report.table) {
        ordered_json j;
        j["record"] = "transition";
        j["from"] = rrc::to_string(t.from);
        j["event"] = rrc::to_string(t.event);
        j["to"] = rrc::to_string(t.to);
        j["uplink_grant"] = rrc::uplink_grant_allowed(t.to);
        line(out, j);
    }
    for (std::size_t i = 0; i < rrc::kAllStates.size(); ++i) {
        ordered_json j;
        j["record"] = "reachability";
        j["state"] = rrc::to_string(rrc::kAllStates[i]);
        const auto& p = report.paths_from_idle[i];
        if (p) {
            ordered_json path = ordered_json::array();
            for (auto e : *p) {
                path.push_back(rrc::to_string(e));
            }
            j["path_from_idle"] = path;
        } else {
            j["path_from_idle"] = nullptr;
        }
        line(out, j);
    }
    ordered_json checks;
    checks["record"] = "checks";
    checks["all_reachable_from_idle"] = report.all_reachable_from_idle;
    checks["ee_uplink_safe"] = report.ee_uplink_safe;
    checks["ee_uplink_resume_single_event"] = report.ee_uplink_resume_single_event;
    checks["idle_to_ee_single_events"] = report.idle_to_ee_single_events;
    line(out, checks);
    return out;
}

}  // namespace trsim::report
