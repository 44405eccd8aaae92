#include "trsim/channel.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <vector>

#include "trsim/errors.hpp"

namespace trsim::channel {

namespace {

constexpr std::uint64_t kMonteCarloBatches = 64;

std::uint64_t count_outages(double threshold, double mean_snr, std::uint64_t n, Rng rng) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (mean_snr * draw_fading_gain(rng) < threshold) {
            ++hits;
        }
    }
    return hits;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double free_space_path_loss(double distance_m, double freq_hz) {
    detail::require_positive(distance_m, "distance_m");
    detail::require_positive(freq_hz, "freq_hz");
    return 20.0 * std::log10(distance_m) + 20.0 * std::log10(freq_hz) +
           20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);
}

double free_space_path_gain(double distance_m, double freq_hz) {
    detail::require_positive(distance_m, "distance_m");
    detail::require_positive(freq_hz, "freq_hz");
    const double ratio = kSpeedOfLight / (4.0 * std::numbers::pi * distance_m * freq_hz);
    return ratio * ratio;
}

double draw_fading_gain(Rng& rng) { return rng.exponential(); }

double sinr_linear(double signal_w, std::span<const double> interference_w, double noise_w) {
    detail::require_non_negative(signal_w, "signal_w");
    detail::require_positive(noise_w, "noise_w");
    double denom = noise_w;
    for (double i : interference_w) {
        detail::require_non_negative(i, "interference_w");
        denom += i;
    }
    return signal_w / denom;
}

double sinr(double signal_w, std::span<const double> interference_w, double noise_w) {
    return linear_to_db(sinr_linear(signal_w, interference_w, noise_w));
}

ChannelRealization realize(double tx_power_dbm, double path_loss_db, double noise_dbm,
                           double fading_power_gain) {
    detail::require_non_negative(path_loss_db, "path_loss_db");
    detail::require_non_negative(fading_power_gain, "fading_power_gain");
    ChannelRealization r;
    r.path_loss_db = path_loss_db;
    r.fading_power_gain = fading_power_gain;
    r.mean_snr_db = tx_power_dbm - path_loss_db - noise_dbm;
    r.inst_snr_db = linear_to_db(db_to_linear(r.mean_snr_db) * fading_power_gain);
    return r;
}

double outage_analytic(double snr_threshold_lin, double mean_snr_lin) {
    detail::require_positive(snr_threshold_lin, "snr_threshold_lin");
    detail::require_positive(mean_snr_lin, "mean_snr_lin");
    return -std::expm1(-snr_threshold_lin / mean_snr_lin);
}

double outage_monte_carlo(double snr_threshold_lin, double mean_snr_lin, std::uint64_t n_trials,
                          std::uint64_t seed) {
    detail::require_positive(snr_threshold_lin, "snr_threshold_lin");
    detail::require_positive(mean_snr_lin, "mean_snr_lin");
    if (n_trials == 0) {
        detail::throw_domain("n_trials must be >= 1");
    }

    const std::uint64_t batches = std::min(kMonteCarloBatches, n_trials);
    std::vector<std::future<std::uint64_t>> parts;
    parts.reserve(batches);
    for (std::uint64_t b = 0; b < batches; ++b) {
        const std::uint64_t n = n_trials / batches + (b < n_trials % batches ? 1 : 0);
        parts.push_back(std::async(std::launch::async, count_outages, snr_threshold_lin,
                                   mean_snr_lin, n, Rng::stream(seed, b)));
    }
    std::uint64_t hits = 0;
    for (auto& p : parts) {
        hits += p.get();
    }
    return static_cast<double>(hits) / static_cast<double>(n_trials);
}

double outage_with_interferers(double snr_threshold_lin, double mean_snr_lin,
                               std::span<const double> inr_lin) {
    detail::require_positive(snr_threshold_lin, "snr_threshold_lin");
    detail::require_positive(mean_snr_lin, "mean_snr_lin");
    const double ratio = snr_threshold_lin / mean_snr_lin;
    // Work in log space so long interferer lists do not underflow.
    double log_success = -ratio;
    for (double inr : inr_lin) {
        detail::require_non_negative(inr, "inr_lin");
        log_success -= std::log1p(ratio * inr);
    }
    return -std::expm1(log_success);
}

}  // namespace trsim::channel
