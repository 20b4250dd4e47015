// SPDX-License-Identifier: Apache-2.0
#include "foasim/feednet.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace foasim {

namespace {
void check_counts(const FeedNetSpec& spec) {
    if (spec.beams_k < 1 || spec.elements_n < 1 || spec.satellites_s < 1 || spec.colors_c < 1 ||
        spec.adc_bits < 1 || spec.feeder_polarizations < 1) {
        throw std::invalid_argument("feed network counts must be at least 1");
    }
}
}  // namespace

double isl_throughput_gbps(const FeedNetSpec& spec) {
    check_counts(spec);
    return spec.elements_n * spec.bandwidth_per_beam_hz * spec.samples_per_bandwidth *
           spec.adc_bits / 1e9;
}

double isl_throughput_distributed_gbps(const FeedNetSpec& spec) {
    check_counts(spec);
    return spec.beams_k * spec.bandwidth_per_beam_hz * spec.samples_per_bandwidth * spec.adc_bits /
           1e9;
}

int wdm_count(double occupied_bandwidth_ghz, double channel_capacity_ghz) {
    if (!(channel_capacity_ghz > 0.0)) throw std::invalid_argument("channel capacity must be positive");
    return static_cast<int>(std::ceil(occupied_bandwidth_ghz / channel_capacity_ghz));
}

double feeder_total_bandwidth_ghz(const FeedNetSpec& spec) {
    check_counts(spec);
    return spec.beams_k * spec.bandwidth_per_beam_hz / 1e9;
}

int gateway_count(const FeedNetSpec& spec) {
    double total = feeder_total_bandwidth_ghz(spec);
    double per_gw = spec.feeder_rf_bandwidth_ghz * spec.feeder_polarizations;
    if (!(per_gw > 0.0)) throw std::invalid_argument("feeder bandwidth must be positive");
    return static_cast<int>(std::ceil(total / per_gw));
}

double aggregate_isl_bandwidth_ghz(const FeedNetSpec& spec) {
    double per_isl = std::round(isl_throughput_gbps(spec));
    return spec.satellites_s * per_isl;
}

NarrowbandCheck narrowband_check(double bandwidth_hz, double f0_hz, double d_over_lambda,
                                 double theta_max_deg, double margin_factor) {
    if (!(bandwidth_hz > 0.0) || !(f0_hz > 0.0) || !(d_over_lambda > 0.0) ||
        !(margin_factor > 0.0)) {
        throw std::invalid_argument("narrowband check arguments must be positive");
    }
    if (theta_max_deg < 0.0 || theta_max_deg >= 90.0) {
        throw std::invalid_argument("scan angle must lie in [0, 90) degrees");
    }
    NarrowbandCheck out;
    out.ratio = bandwidth_hz / f0_hz;
    out.margin_factor = margin_factor;
    double s = std::sin(theta_max_deg * std::numbers::pi / 180.0);
    double denom = d_over_lambda * s;
    if (denom <= 0.0) {
        out.bound = std::numeric_limits<double>::infinity();
        out.narrowband = true;
        return out;
    }
    out.bound = 1.0 / denom;
    out.narrowband = out.ratio <= out.bound / margin_factor;
    return out;
}

std::string feednet_report_json(const FeedNetSpec& spec) {
    double per_isl = isl_throughput_gbps(spec);
    std::ostringstream os;
    os << "{\n";
    os << "  \"beams_K\": " << spec.beams_k << ",\n";
    os << "  \"colors_C\": " << spec.colors_c << ",\n";
    os << "  \"elements_N\": " << spec.elements_n << ",\n";
    os << "  \"satellites_S\": " << spec.satellites_s << ",\n";
    os << "  \"bandwidth_per_beam_mhz\": " << spec.bandwidth_per_beam_hz / 1e6 << ",\n";
    os << "  \"adc_dac_bits\": " << spec.adc_bits << ",\n";
    os << "  \"samples_per_bandwidth\": " << spec.samples_per_bandwidth << ",\n";
    os << "  \"optical_spectral_eff_bits_per_symbol\": " << spec.optical_spectral_eff << ",\n";
    os << "  \"single_isl_throughput_gbps\": " << per_isl << ",\n";
    os << "  \"single_isl_throughput_distributed_gbps\": " << isl_throughput_distributed_gbps(spec)
       << ",\n";
    os << "  \"occupied_isl_bandwidth_ghz\": " << per_isl << ",\n";
    os << "  \"occupied_isl_bandwidth_spectral_eff_adjusted_ghz\": "
       << per_isl / spec.optical_spectral_eff << ",\n";
    os << "  \"wdm_channels_per_isl\": " << wdm_count(per_isl, spec.wdm_channel_capacity_ghz)
       << ",\n";
    os << "  \"aggregate_isl_bandwidth_ghz\": " << aggregate_isl_bandwidth_ghz(spec) << ",\n";
    os << "  \"feeder_total_bandwidth_ghz\": " << feeder_total_bandwidth_ghz(spec) << ",\n";
    os << "  \"feeder_rf_bandwidth_ghz\": " << spec.feeder_rf_bandwidth_ghz << ",\n";
    os << "  \"feeder_polarizations\": " << spec.feeder_polarizations << ",\n";
    os << "  \"gateways_required\": " << gateway_count(spec) << ",\n";
    os << "  \"note\": \"occupied bandwidth equates GHz to raw Gbps; the spectral-efficiency"
          "-adjusted figure is also reported\"\n";
    os << "}\n";
    return os.str();
}

}  // namespace foasim
