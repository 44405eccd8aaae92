#include "trsim/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "trsim/errors.hpp"

namespace trsim::exposure {

namespace {

double sorted_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) {
        s += t;
    }
    return s;
}

}  // namespace

const Band* ExposureStandard::find_band(double freq_hz) const noexcept {
    for (const Band& b : bands) {
        if (freq_hz >= b.freq_low_hz && freq_hz < b.freq_high_hz) {
            return &b;
        }
    }
    return nullptr;
}

void validate(const ExposureStandard& standard) {
    if (standard.name.empty()) {
        detail::throw_domain("exposure standard without a name");
    }
    if (standard.bands.empty()) {
        detail::throw_domain(fmt::format("standard '{}' has no bands", standard.name));
    }
    for (std::size_t i = 0; i < standard.bands.size(); ++i) {
        const Band& b = standard.bands[i];
        if (!(b.freq_low_hz >= 0.0) || !(b.freq_high_hz > b.freq_low_hz)) {
            detail::throw_domain(fmt::format("standard '{}' band {}: empty or negative range",
                                             standard.name, i));
        }
        if (!(b.e_ref_v_per_m > 0.0)) {
            detail::throw_domain(
                fmt::format("standard '{}' band {}: e_ref must be > 0", standard.name, i));
        }
        if (i > 0 && standard.bands[i - 1].freq_high_hz > b.freq_low_hz) {
            detail::throw_domain(fmt::format("standard '{}' band {}: unsorted or overlapping",
                                             standard.name, i));
        }
    }
}

double power_density(double tx_power_w, double antenna_gain_lin, double distance_m) {
    detail::require_non_negative(tx_power_w, "tx_power_w");
    detail::require_positive(antenna_gain_lin, "antenna_gain_lin");
    detail::require_positive(distance_m, "distance_m");
    return tx_power_w * antenna_gain_lin / (4.0 * std::numbers::pi * distance_m * distance_m);
}

double e_field_from_density(double s_w_m2) {
    detail::require_non_negative(s_w_m2, "power density");
    return std::sqrt(s_w_m2 * kFreeSpaceImpedance);
}

double density_from_e_field(double e_field_v_per_m) {
    detail::require_non_negative(e_field_v_per_m, "e_field_v_per_m");
    return e_field_v_per_m * e_field_v_per_m / kFreeSpaceImpedance;
}

double exposure_ratio(double e_field_v_per_m, const ExposureStandard& standard, double freq_hz) {
    detail::require_non_negative(e_field_v_per_m, "e_field_v_per_m");
    detail::require_positive(freq_hz, "freq_hz");
    const Band* band = standard.find_band(freq_hz);
    if (band == nullptr) {
        throw UnmappedBandError(standard.name, freq_hz);
    }
    return e_field_v_per_m / band->e_ref_v_per_m;
}

ExposureReport network_exposure(std::span<const UserEquipment> devices,
                                std::span<const ExposureStandard> standards,
                                const ExposureOptions& options) {
    if (devices.empty()) {
        detail::throw_domain("network_exposure needs at least one device");
    }
    detail::require_positive(options.observer_distance_m, "observer_distance_m");
    detail::require_non_negative(options.tr_residual_power_w, "tr_residual_power_w");

    ExposureReport report;
    for (const auto& s : standards) {
        report.standards.push_back(s.name);
    }

    std::vector<double> densities;
    std::vector<std::vector<double>> squared_er(standards.size());
    for (const UserEquipment& ue : devices) {
        const double radiated = trmode::uplink_enabled(ue.mode) ? ue.tx_power_w
                                                                 : options.tr_residual_power_w;
        DeviceExposure d;
        d.device_id = ue.id;
        d.power_density_w_m2 =
            power_density(radiated, ue.antenna_gain_lin, options.observer_distance_m);
        d.e_field_v_per_m = e_field_from_density(d.power_density_w_m2);
        for (std::size_t k = 0; k < standards.size(); ++k) {
            const double er = exposure_ratio(d.e_field_v_per_m, standards[k], ue.freq_hz);
            d.er_per_standard.push_back(er);
            squared_er[k].push_back(er * er);
        }
        densities.push_back(d.power_density_w_m2);
        report.per_device.push_back(std::move(d));
    }

    report.network_total_power_density = sorted_sum(std::move(densities));
    report.network_e_field_v_per_m = e_field_from_density(report.network_total_power_density);
    for (auto& terms : squared_er) {
        report.network_er_per_standard.push_back(std::sqrt(sorted_sum(std::move(terms))));
    }
    return report;
}

double complexity_metric(long long n_active_ul, double unit_cost) {
    if (n_active_ul < 0) {
        detail::throw_domain("n_active_ul must be >= 0");
    }
    detail::require_non_negative(unit_cost, "unit_cost");
    if (n_active_ul < 2) {
        return 0.0;
    }
    const auto n = static_cast<double>(n_active_ul);
    return unit_cost * n * (n - 1.0) / 2.0;
}

std::vector<ProbeResult> evaluate_probes(std::span<const ExposureProbe> probes,
                                         std::span<const ExposureStandard> standards) {
    std::vector<ProbeResult> out;
    out.reserve(probes.size());
    for (const ExposureProbe& p : probes) {
        auto it = std::find_if(standards.begin(), standards.end(),
                               [&](const ExposureStandard& s) { return s.name == p.standard; });
        if (it == standards.end()) {
            detail::throw_domain(
                fmt::format("probe '{}' names unknown standard '{}'", p.id, p.standard));
        }
        ProbeResult r;
        r.probe = p;
        r.e_field_v_per_m = e_field_from_density(p.power_density_w_m2);
        r.exposure_ratio = exposure_ratio(r.e_field_v_per_m, *it, p.freq_hz);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace trsim::exposure
