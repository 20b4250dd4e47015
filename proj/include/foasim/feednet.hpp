// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace foasim {

/// Sizing inputs for the centralized beamforming network: a command
/// satellite digitizes per-element streams and feeds each array satellite
/// over one optical inter-satellite link.
struct FeedNetSpec {
    int beams_k = 1;
    int colors_c = 1;
    int elements_n = 1;
    int satellites_s = 1;
    double bandwidth_per_beam_hz = 60e6;
    int adc_bits = 8;
    double samples_per_bandwidth = 2.5;
    double optical_spectral_eff = 2.0;       // bits per symbol
    double wdm_channel_capacity_ghz = 100.0;
    double feeder_rf_bandwidth_ghz = 3.0;
    int feeder_polarizations = 2;
};

/// N * B * samples * bits, in Gbps (centralized network, element streams).
double isl_throughput_gbps(const FeedNetSpec& spec);

/// Distributed alternative for comparison: per-ISL rate scales with the
/// beam count K instead of the element count N.
double isl_throughput_distributed_gbps(const FeedNetSpec& spec);

/// ceil(occupied / capacity).
int wdm_count(double occupied_bandwidth_ghz, double channel_capacity_ghz);

/// Gateways needed: ceil(K * B / (feeder RF bandwidth * polarizations)).
int gateway_count(const FeedNetSpec& spec);
double feeder_total_bandwidth_ghz(const FeedNetSpec& spec);

/// S times the per-ISL occupied bandwidth, with the per-ISL figure rounded
/// to whole GHz first, matching the reference sizing arithmetic.
double aggregate_isl_bandwidth_ghz(const FeedNetSpec& spec);

struct NarrowbandCheck {
    bool narrowband = false;
    double ratio = 0.0;        // B / f0
    double bound = 0.0;        // lambda / (D sin(theta_max)) before margin
    double margin_factor = 0.0;
};

/// Narrowband phased-array test: B/f0 against lambda/(D sin theta_max)
/// derated by margin_factor; wideband means true-delay beamforming.
NarrowbandCheck narrowband_check(double bandwidth_hz, double f0_hz, double d_over_lambda,
                                 double theta_max_deg, double margin_factor = 10.0);

/// JSON report mirroring the sizing table rows.
std::string feednet_report_json(const FeedNetSpec& spec);

}  // namespace foasim
