#pragma once

// Link-level channel: free-space loss, Rayleigh power fading, SINR and
// outage probability.
//
// Everything internal is linear power; dB appears only at the API edges.

#include <cstdint>
#include <span>

#include "trsim/rng.hpp"

namespace trsim::channel {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// One draw of a link.
struct ChannelRealization {
    double path_loss_db = 0.0;
    double fading_power_gain = 1.0;  // unit mean
    double mean_snr_db = 0.0;
    double inst_snr_db = 0.0;
};

double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Friis far-field loss in dB: 20 log10(d) + 20 log10(f) + 20 log10(4 pi / c).
double free_space_path_loss(double distance_m, double freq_hz);

/// Linear path gain (10^(-FSPL/10)), i.e. (c / (4 pi d f))^2.
double free_space_path_gain(double distance_m, double freq_hz);

/// Power gain of a Rayleigh envelope: exponential with unit mean.
double draw_fading_gain(Rng& rng);

/// Linear SINR. Requires noise_w > 0 and non-negative powers.
double sinr_linear(double signal_w, std::span<const double> interference_w, double noise_w);

/// SINR in dB.
double sinr(double signal_w, std::span<const double> interference_w, double noise_w);

/// Builds a realization from a link budget and one fading draw.
ChannelRealization realize(double tx_power_dbm, double path_loss_db, double noise_dbm,
                           double fading_power_gain);

/// P(mean_snr * g < threshold) for g ~ Exp(1).
double outage_analytic(double snr_threshold_lin, double mean_snr_lin);

/// Monte Carlo estimate of the same probability. Trials are split into a
/// fixed number of batches, each with its own derived stream, so the
/// estimate does not depend on how many threads evaluate it.
double outage_monte_carlo(double snr_threshold_lin, double mean_snr_lin, std::uint64_t n_trials,
                          std::uint64_t seed);

/// Outage of a Rayleigh-faded desired link against independently
/// Rayleigh-faded interferers:
///   P(mean_snr g0 / (1 + sum inr_k g_k) < threshold)
///     = 1 - exp(-threshold / mean_snr) * prod_k 1 / (1 + threshold inr_k / mean_snr)
/// where inr_k is the mean interference-to-noise ratio of interferer k.
double outage_with_interferers(double snr_threshold_lin, double mean_snr_lin,
                               std::span<const double> inr_lin);

}  // namespace trsim::channel
