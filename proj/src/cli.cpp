#include "trsim/cli.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "trsim/config.hpp"
#include "trsim/errors.hpp"
#include "trsim/frames.hpp"
#include "trsim/rrc.hpp"
#include "trsim/sim.hpp"

namespace trsim::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int code(ExitCode c) { return static_cast<int>(c); }

int fail(std::ostream& err, ExitCode c, std::string_view kind, std::string_view message) {
    err << "trsim: error[" << kind << "]: " << message << '\n';
    return code(c);
}

sim::ScenarioConfig load_scenario(const RunManifest& m) {
    if (m.config_path.empty()) {
        throw ConfigError({{0, "--config", "a scenario config is required"}});
    }
    std::string text;
    try {
        text = config::read_file(m.config_path);
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
    sim::ScenarioConfig cfg = config::parse_config(text);
    if (m.seed_override) {
        cfg.seed = *m.seed_override;
    }
    return cfg;
}

void write_output(const RunManifest& m, const std::string& payload, std::ostream& out) {
    if (m.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(m.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError(fmt::format("cannot open '{}' for writing", m.output_path));
    }
    file << payload;
    if (!file) {
        throw IoError(fmt::format("failed writing '{}'", m.output_path));
    }
}

std::string execute(const RunManifest& m) {
    if (m.subcommand == "run") {
        const auto cfg = load_scenario(m);
        return report::emit_run(cfg, sim::run_scenario(cfg), m.format);
    }
    if (m.subcommand == "outage") {
        const auto cfg = load_scenario(m);
        std::vector<double> points = m.mean_snr_points_db;
        if (points.empty()) {
            for (int db = 30; db <= 100; db += 5) {
                points.push_back(db);
            }
        }
        return report::emit_outage(sim::outage_curve(cfg, points), m.format);
    }
    if (m.subcommand == "frames") {
        const auto num = frames::make_numerology(m.mu);
        std::vector<frames::RadioFrame> out;
        if (m.duplex == "fdd") {
            auto pair = frames::build_fdd_pair(num, m.tr_active);
            out.push_back(std::move(pair.downlink));
            out.push_back(std::move(pair.uplink));
        } else if (m.duplex == "tdd") {
            const std::string pattern =
                m.tdd_pattern.empty() ? std::string(frames::kDefaultTddPattern) : m.tdd_pattern;
            out.push_back(frames::build_tdd_frame(num, frames::parse_tdd_pattern(pattern),
                                                  m.tr_active, m.superframe_subframe));
        } else {
            detail::throw_domain(fmt::format("duplex '{}' is not one of fdd, tdd", m.duplex));
        }
        return report::emit_frames(out, m.format);
    }
    if (m.subcommand == "rrc-check") {
        return report::emit_rrc(rrc::check_reachability(), m.format);
    }
    if (m.subcommand == "exposure") {
        if (!m.fixture_path.empty()) {
            std::string text;
            try {
                text = config::read_file(m.fixture_path);
            } catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
            const auto fx = config::parse_exposure_fixture(text);
            return report::emit_probes(exposure::evaluate_probes(fx.probes, fx.standards),
                                       m.format);
        }
        const auto cfg = load_scenario(m);
        return report::emit_exposure(sim::run_scenario(cfg).exposure, m.format);
    }
    detail::throw_domain(fmt::format("unknown subcommand '{}'", m.subcommand));
}

constexpr const char* kExitCodesHelp =
    "Exit codes:\n"
    "  0   success\n"
    "  1   usage error (bad flags or arguments)\n"
    "  2   configuration error (unknown/missing key, out-of-range value)\n"
    "  3   domain error (invalid physical or frame parameter)\n"
    "  4   frequency outside every band of an exposure standard\n"
    "  5   file could not be read or written\n"
    "  70  internal error\n"
    "Diagnostics start with 'trsim: error[<kind>]:' on a single line.";

}  // namespace

int dispatch(const RunManifest& m, std::ostream& out, std::ostream& err) {
    try {
        write_output(m, execute(m), out);
        return code(ExitCode::Ok);
    } catch (const ConfigError& e) {
        fail(err, ExitCode::Config, "config", fmt::format("{} problem(s)", e.issues().size()));
        for (const auto& issue : e.issues()) {
            err << "  " << to_string(issue) << '\n';
        }
        return code(ExitCode::Config);
    } catch (const UnmappedBandError& e) {
        return fail(err, ExitCode::UnmappedBand, "unmapped-band", e.what());
    } catch (const DomainError& e) {
        return fail(err, ExitCode::Domain, "domain", e.what());
    } catch (const IoError& e) {
        return fail(err, ExitCode::Io, "io", e.what());
    } catch (const std::exception& e) {
        return fail(err, ExitCode::Internal, "internal", e.what());
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"trsim: TR-mode cellular link simulator"};
    app.footer(kExitCodesHelp);
    app.require_subcommand(1);

    RunManifest m;
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::string tr = "off";

    auto add_common = [&](CLI::App* sub, bool takes_config) {
        if (takes_config) {
            sub->add_option("--config,-c,config", m.config_path, "Scenario config file");
            sub->add_option("--seed", seed, "Override the config seed");
        }
        sub->add_option("--out,-o", m.output_path, "Output file (default: standard output)");
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json-lines"}));
    };

    auto* run = app.add_subcommand("run", "Run a full scenario and emit every result series");
    add_common(run, true);

    auto* outage = app.add_subcommand("outage", "Outage probability versus mean SNR, AM and TR");
    add_common(outage, true);
    outage->add_option("--points", m.mean_snr_points_db, "Mean SNR points in dB")
        ->delimiter(',');

    auto* fr = app.add_subcommand("frames", "Dump frame structures");
    add_common(fr, false);
    fr->add_option("--mu", m.mu, "Numerology index")->check(CLI::Range(0, frames::kMaxMu));
    fr->add_option("--duplex", m.duplex, "Duplex type")->check(CLI::IsMember({"fdd", "tdd"}));
    fr->add_option("--tr", tr, "TR mode")->check(CLI::IsMember({"on", "off"}));
    fr->add_option("--pattern", m.tdd_pattern, "TDD pattern, e.g. DSUUUDSUUU");
    fr->add_option("--superframe", m.superframe_subframe, "Superframe subframe index");

    auto* rc = app.add_subcommand("rrc-check", "Transition table and reachability report");
    add_common(rc, false);

    auto* ex = app.add_subcommand("exposure", "Exposure report for a scenario or a fixture");
    add_common(ex, true);
    ex->add_option("--fixture", m.fixture_path, "Measurement fixture ([probe.*] records)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return code(ExitCode::Ok);
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return code(ExitCode::Ok);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        return fail(err, ExitCode::Usage, "usage", msg);
    }

    for (auto* sub : app.get_subcommands()) {
        m.subcommand = sub->get_name();
        if (auto* opt = sub->get_option_no_throw("--seed"); opt != nullptr && opt->count() > 0) {
            m.seed_override = seed;
        }
    }
    m.format = format == "json-lines" ? report::Format::JsonLines : report::Format::Csv;
    m.tr_active = tr == "on";
    if (m.subcommand == "exposure" && m.config_path.empty() == m.fixture_path.empty()) {
        return fail(err, ExitCode::Usage, "usage",
                    "exposure needs exactly one of --config or --fixture");
    }
    if ((m.subcommand == "run" || m.subcommand == "outage") && m.config_path.empty()) {
        return fail(err, ExitCode::Usage, "usage", m.subcommand + " needs --config");
    }
    return dispatch(m, out, err);
}

}  // namespace trsim::cli
