#include "trsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "trsim/errors.hpp"

namespace trsim::config {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<Entry> lex(std::string_view text, std::vector<ConfigIssue>& issues) {
    std::vector<Entry> out;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                issues.push_back({line_no, std::string(line), "malformed section header"});
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            issues.push_back({line_no, std::string(line), "expected 'key = value'"});
            continue;
        }
        if (section.empty()) {
            issues.push_back({line_no, std::string(trim(line.substr(0, eq))),
                              "key outside of any section"});
            continue;
        }
        out.push_back({section, std::string(trim(line.substr(0, eq))),
                       std::string(trim(line.substr(eq + 1))), line_no});
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

// A field of ScenarioConfig bound to its text form.
struct Field {
    std::string section;
    std::string key;
    bool required;
    std::function<std::string(std::string_view, sim::ScenarioConfig&)> set;  // "" on success
    std::function<std::string(const sim::ScenarioConfig&)> get;
};

Field real(std::string section, std::string key, bool required, double sim::ScenarioConfig::*m) {
    return {std::move(section), std::move(key), required,
            [m](std::string_view v, sim::ScenarioConfig& c) -> std::string {
                double d = 0.0;
                if (!parse_number(v, d)) {
                    return fmt::format("'{}' is not a number", v);
                }
                c.*m = d;
                return {};
            },
            [m](const sim::ScenarioConfig& c) { return fmt_double(c.*m); }};
}

template <typename Int>
Field integer(std::string section, std::string key, bool required, Int sim::ScenarioConfig::*m) {
    return {std::move(section), std::move(key), required,
            [m](std::string_view v, sim::ScenarioConfig& c) -> std::string {
                Int i{};
                if (!parse_number(v, i)) {
                    return fmt::format("'{}' is not an integer", v);
                }
                c.*m = i;
                return {};
            },
            [m](const sim::ScenarioConfig& c) { return fmt::format("{}", c.*m); }};
}

const std::vector<Field>& fields() {
    using C = sim::ScenarioConfig;
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(integer("scenario", "n_users", true, &C::n_users));
        f.push_back(integer("scenario", "n_tr", true, &C::n_tr));
        f.push_back(integer("scenario", "n_slots", true, &C::n_slots));
        f.push_back(integer("scenario", "seed", true, &C::seed));
        f.push_back({"scenario", "placement", false,
                     [](std::string_view v, C& c) -> std::string {
                         if (v == "uniform") {
                             c.placement = sim::Placement::Uniform;
                         } else if (v == "fixed") {
                             c.placement = sim::Placement::Fixed;
                         } else {
                             return fmt::format("'{}' is not one of uniform, fixed", v);
                         }
                         return {};
                     },
                     [](const C& c) -> std::string {
                         return c.placement == sim::Placement::Uniform ? "uniform" : "fixed";
                     }});
        f.push_back(real("scenario", "cell_radius_m", true, &C::cell_radius_m));
        f.push_back(real("scenario", "min_distance_m", false, &C::min_distance_m));
        f.push_back(real("scenario", "fixed_distance_m", false, &C::fixed_distance_m));
        f.push_back({"scenario", "duplex", false,
                     [](std::string_view v, C& c) -> std::string {
                         if (v == "fdd") {
                             c.duplex = sim::DuplexMode::Fdd;
                         } else if (v == "tdd") {
                             c.duplex = sim::DuplexMode::Tdd;
                         } else {
                             return fmt::format("'{}' is not one of fdd, tdd", v);
                         }
                         return {};
                     },
                     [](const C& c) -> std::string {
                         return c.duplex == sim::DuplexMode::Fdd ? "fdd" : "tdd";
                     }});
        f.push_back(integer("scenario", "mu", false, &C::mu));
        f.push_back({"scenario", "tdd_pattern", false,
                     [](std::string_view v, C& c) -> std::string {
                         c.tdd_pattern = std::string(v);
                         return {};
                     },
                     [](const C& c) { return c.tdd_pattern; }});
        f.push_back(integer("scenario", "superframe_subframe", false, &C::superframe_subframe));
        f.push_back(real("scenario", "ul_activity", false, &C::ul_activity));
        f.push_back(real("scenario", "dl_activity", false, &C::dl_activity));
        f.push_back(real("scenario", "always_on_fraction", false, &C::always_on_fraction));

        f.push_back(real("channel", "freq_hz", true, &C::freq_hz));
        f.push_back(real("channel", "bs_tx_power_w", true, &C::bs_tx_power_w));
        f.push_back(real("channel", "ue_tx_power_w", true, &C::ue_tx_power_w));
        f.push_back(real("channel", "noise_dbm", true, &C::noise_dbm));
        f.push_back(real("channel", "snr_threshold_db", true, &C::snr_threshold_db));

        f.push_back({"switching", "rss_threshold_dbm", true,
                     [](std::string_view v, C& c) -> std::string {
                         if (!parse_number(v, c.switching.rss_threshold_dbm)) {
                             return fmt::format("'{}' is not a number", v);
                         }
                         return {};
                     },
                     [](const C& c) { return fmt_double(c.switching.rss_threshold_dbm); }});
        f.push_back({"switching", "hysteresis_db", false,
                     [](std::string_view v, C& c) -> std::string {
                         if (!parse_number(v, c.switching.hysteresis_db)) {
                             return fmt::format("'{}' is not a number", v);
                         }
                         return {};
                     },
                     [](const C& c) { return fmt_double(c.switching.hysteresis_db); }});

        f.push_back(real("exposure", "observer_distance_m", false, &C::observer_distance_m));
        f.push_back(real("exposure", "tr_residual_power_w", false, &C::tr_residual_power_w));
        f.push_back(real("exposure", "complexity_unit_cost", false, &C::complexity_unit_cost));
        return f;
    }();
    return table;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

// "band = f_low f_high e_ref | provenance"
std::string parse_band(std::string_view value, exposure::Band& band) {
    std::string_view numbers = value;
    const auto bar = value.find('|');
    if (bar != std::string_view::npos) {
        numbers = value.substr(0, bar);
        band.provenance = std::string(trim(value.substr(bar + 1)));
    }
    std::istringstream in{std::string(numbers)};
    std::string lo, hi, ref, extra;
    in >> lo >> hi >> ref;
    if (ref.empty() || (in >> extra)) {
        return "band needs exactly three numbers: f_low_hz f_high_hz e_ref_v_per_m";
    }
    if (!parse_number(std::string_view(lo), band.freq_low_hz) ||
        !parse_number(std::string_view(hi), band.freq_high_hz) ||
        !parse_number(std::string_view(ref), band.e_ref_v_per_m)) {
        return "band values must be numbers";
    }
    return {};
}

// Collects [standards.<key>] sections in order of first appearance.
class StandardsBuilder {
public:
    bool accept(const Entry& e, std::vector<ConfigIssue>& issues) {
        if (!starts_with(e.section, "standards.")) {
            return false;
        }
        const std::string key = e.section.substr(std::string_view("standards.").size());
        auto it = index_.find(key);
        if (it == index_.end()) {
            it = index_.emplace(key, standards_.size()).first;
            standards_.push_back({key, {}});
            lines_.push_back(e.line);
        }
        exposure::ExposureStandard& s = standards_[it->second];
        if (e.key == "name") {
            s.name = e.value;
        } else if (e.key == "band") {
            exposure::Band b;
            if (auto err = parse_band(e.value, b); !err.empty()) {
                issues.push_back({e.line, e.section + ".band", err});
            } else {
                s.bands.push_back(std::move(b));
            }
        } else {
            issues.push_back({e.line, e.section + "." + e.key, "unknown key"});
        }
        return true;
    }

    std::vector<exposure::ExposureStandard> finish(std::vector<ConfigIssue>& issues) {
        for (std::size_t i = 0; i < standards_.size(); ++i) {
            try {
                exposure::validate(standards_[i]);
            } catch (const DomainError& err) {
                issues.push_back({lines_[i], "standards." + standards_[i].name, err.what()});
            }
        }
        return std::move(standards_);
    }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<exposure::ExposureStandard> standards_;
    std::vector<int> lines_;
};

}  // namespace

const std::vector<std::string>& required_scenario_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) {
            if (f.required) {
                k.push_back(f.section + "." + f.key);
            }
        }
        return k;
    }();
    return keys;
}

sim::ScenarioConfig parse_config(std::string_view text) {
    std::vector<ConfigIssue> issues;
    const auto entries = lex(text, issues);

    sim::ScenarioConfig cfg;
    StandardsBuilder standards;
    std::map<std::string, int> seen;  // "section.key" -> line

    for (const Entry& e : entries) {
        if (standards.accept(e, issues)) {
            continue;
        }
        const std::string full = e.section + "." + e.key;
        const auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) {
            return f.section == e.section && f.key == e.key;
        });
        if (it == fields().end()) {
            const bool known_section = std::any_of(fields().begin(), fields().end(),
                                                   [&](const Field& f) { return f.section == e.section; });
            issues.push_back({e.line, full, known_section ? "unknown key" : "unknown section"});
            continue;
        }
        if (auto prev = seen.find(full); prev != seen.end()) {
            issues.push_back({e.line, full, fmt::format("duplicate key (first set on line {})",
                                                        prev->second)});
            continue;
        }
        seen.emplace(full, e.line);
        if (auto err = it->set(e.value, cfg); !err.empty()) {
            issues.push_back({e.line, full, err});
        }
    }
    for (const auto& f : fields()) {
        const std::string full = f.section + "." + f.key;
        if (f.required && !seen.contains(full)) {
            issues.push_back({0, full, "missing required key"});
        }
    }
    cfg.standards = standards.finish(issues);

    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }

    try {
        sim::validate(cfg);
    } catch (const ConfigError& err) {
        // Attach the defining line to each range problem.
        std::vector<ConfigIssue> located;
        for (ConfigIssue issue : err.issues()) {
            for (const auto& [full, line] : seen) {
                if (full.substr(full.find('.') + 1) == issue.field) {
                    issue.line = line;
                    issue.field = full;
                    break;
                }
            }
            located.push_back(std::move(issue));
        }
        throw ConfigError(std::move(located));
    }
    return cfg;
}

std::string emit_config(const sim::ScenarioConfig& cfg) {
    std::string out;
    std::string section;
    for (const auto& f : fields()) {
        if (f.section != section) {
            if (!section.empty()) {
                out += '\n';
            }
            section = f.section;
            out += fmt::format("[{}]\n", section);
        }
        out += fmt::format("{} = {}\n", f.key, f.get(cfg));
    }
    for (const auto& s : cfg.standards) {
        std::string key;
        for (char c : s.name) {
            key += std::isalnum(static_cast<unsigned char>(c))
                       ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                       : '_';
        }
        out += fmt::format("\n[standards.{}]\nname = {}\n", key, s.name);
        for (const auto& b : s.bands) {
            out += fmt::format("band = {} {} {}", fmt_double(b.freq_low_hz),
                               fmt_double(b.freq_high_hz), fmt_double(b.e_ref_v_per_m));
            if (!b.provenance.empty()) {
                out += " | " + b.provenance;
            }
            out += '\n';
        }
    }
    return out;
}

ExposureFixture parse_exposure_fixture(std::string_view text) {
    std::vector<ConfigIssue> issues;
    const auto entries = lex(text, issues);

    StandardsBuilder standards;
    std::vector<exposure::ExposureProbe> probes;
    std::map<std::string, std::size_t> probe_index;
    std::map<std::string, int> probe_line;
    std::map<std::string, std::map<std::string, int>> probe_keys;

    for (const Entry& e : entries) {
        if (standards.accept(e, issues)) {
            continue;
        }
        if (!starts_with(e.section, "probe.")) {
            issues.push_back({e.line, e.section + "." + e.key, "unknown section"});
            continue;
        }
        const std::string id = e.section.substr(std::string_view("probe.").size());
        auto [it, inserted] = probe_index.emplace(id, probes.size());
        if (inserted) {
            probes.push_back({});
            probes.back().id = id;
            probe_line[id] = e.line;
        }
        exposure::ExposureProbe& p = probes[it->second];
        auto& keys = probe_keys[id];
        if (keys.contains(e.key)) {
            issues.push_back({e.line, e.section + "." + e.key, "duplicate key"});
            continue;
        }
        keys.emplace(e.key, e.line);
        std::string err;
        if (e.key == "generation") {
            p.generation = e.value;
        } else if (e.key == "mode") {
            if (e.value == "am") {
                p.mode = trmode::Mode::ActiveMode;
            } else if (e.value == "tr") {
                p.mode = trmode::Mode::ThermalRadiationMode;
            } else {
                err = fmt::format("'{}' is not one of am, tr", e.value);
            }
        } else if (e.key == "standard") {
            p.standard = e.value;
        } else if (e.key == "freq_hz") {
            if (!parse_number(std::string_view(e.value), p.freq_hz) || !(p.freq_hz > 0.0)) {
                err = "must be a number > 0";
            }
        } else if (e.key == "power_density_w_m2") {
            if (!parse_number(std::string_view(e.value), p.power_density_w_m2) ||
                !(p.power_density_w_m2 >= 0.0)) {
                err = "must be a number >= 0";
            }
        } else if (e.key == "note") {
            p.note = e.value;
        } else {
            err = "unknown key";
        }
        if (!err.empty()) {
            issues.push_back({e.line, e.section + "." + e.key, err});
        }
    }
    for (const auto& p : probes) {
        for (const char* key : {"generation", "mode", "standard", "freq_hz", "power_density_w_m2"}) {
            if (!probe_keys[p.id].contains(key)) {
                issues.push_back({probe_line[p.id], "probe." + p.id + "." + key,
                                  "missing required key"});
            }
        }
    }

    ExposureFixture fx;
    fx.standards = standards.finish(issues);
    fx.probes = std::move(probes);
    if (fx.probes.empty()) {
        issues.push_back({0, "probe", "fixture defines no probes"});
    }
    for (const auto& p : fx.probes) {
        const bool known = std::any_of(fx.standards.begin(), fx.standards.end(),
                                       [&](const auto& s) { return s.name == p.standard; });
        if (!p.standard.empty() && !known) {
            issues.push_back({probe_keys[p.id]["standard"], "probe." + p.id + ".standard",
                              fmt::format("unknown standard '{}'", p.standard)});
        }
    }
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    return fx;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace trsim::config
