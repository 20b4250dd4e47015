// SPDX-License-Identifier: Apache-2.0
#include "foasim/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace foasim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBoltzmannDb = 228.6;  // -10 log10(k_B)
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kLightSpeed = 299792458.0;
}  // namespace

double rf_power_per_satellite_w(const PowerChain& chain) {
    if (chain.tx_platform_dc_ratio < 0.0 || chain.tx_platform_dc_ratio > 1.0 ||
        chain.dc_to_rf_efficiency <= 0.0 || chain.dc_to_rf_efficiency > 1.0) {
        throw std::invalid_argument("power chain fractions must lie in (0, 1]");
    }
    return chain.solar_dc_per_m2_w * chain.array_surface_m2 * chain.tx_platform_dc_ratio *
           chain.dc_to_rf_efficiency;
}

PhyTable default_phy_table() {
    PhyTable t;
    t.rows = {{-7.0, 0.20}, {-6.0, 0.23}, {-5.0, 0.31}, {-4.0, 0.38}, {-3.0, 0.49}, {-2.0, 0.59},
              {-1.0, 0.69}, {0.0, 0.82},  {1.0, 0.95},  {2.0, 1.11},  {3.0, 1.28}};
    return t;
}

std::optional<PhyRow> phy_select(double effective_sinr_db, const PhyTable& table, double slack_db) {
    std::optional<PhyRow> best;
    for (const PhyRow& row : table.rows) {
        if (row.required_sinr_db <= effective_sinr_db + slack_db) {
            if (!best || row.spectral_efficiency > best->spectral_efficiency) best = row;
        }
    }
    return best;
}

double beam_throughput_mbps(double eta, double bandwidth_hz, int reuse_m, double bw_efficiency) {
    if (bw_efficiency <= 0.0 || bw_efficiency > 1.0) {
        throw std::invalid_argument("bandwidth efficiency factor must lie in (0, 1]");
    }
    if (reuse_m < 1) throw std::invalid_argument("reuse factor must be at least 1");
    return eta * (bandwidth_hz / reuse_m) * bw_efficiency / 1e6;
}

double eirp_per_beam_dbw(double total_rf_dbw, double directivity_dbi, double antenna_losses_db,
                         double backoff_db, int active_beams) {
    if (active_beams < 1) throw std::invalid_argument("need at least one active beam");
    return total_rf_dbw - backoff_db + directivity_dbi - antenna_losses_db -
           10.0 * std::log10(static_cast<double>(active_beams));
}

double los_snr_db(double eirp_dbw, const LossChain& losses, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return eirp_dbw + losses.g_over_t_db + kBoltzmannDb - 10.0 * std::log10(bandwidth_hz) -
           losses.fspl_db - losses.atmospheric_db - losses.body_db - losses.demod_loss_db;
}

double area_throughput_mbps_km2(double aggregate_mbps, double area_km2) {
    if (!(area_km2 > 0.0)) throw std::invalid_argument("coverage area must be positive");
    return aggregate_mbps / area_km2;
}

double slant_range_km(double h_sat_km, double epsilon_deg) {
    double eps = epsilon_deg * kPi / 180.0;
    double re = kEarthRadiusKm;
    double rs = re + h_sat_km;
    return std::sqrt(rs * rs - re * re * std::cos(eps) * std::cos(eps)) - re * std::sin(eps);
}

double fspl_at_min_elevation_db(double h_sat_km, double epsilon_deg, double f0_hz) {
    double d_m = slant_range_km(h_sat_km, epsilon_deg) * 1000.0;
    return 20.0 * std::log10(4.0 * kPi * d_m * f0_hz / kLightSpeed);
}

BeamformingModel::BeamformingModel(const FoAGeometry& foa, const BeamPlan& plan, double lambda,
                                   const PhaseErrorSet* errors)
    : foa_(&foa), plan_(&plan), kernel_(foa, lambda) {
    kernel_.set_phase_errors(errors);
    refresh_active_set();
}

void BeamformingModel::refresh_active_set() {
    active_.clear();
    alpha_ = 0.0;
    for (const Beam& b : plan_->beams) {
        if (!b.active) continue;
        active_.push_back(b.id);
        alpha_ += kernel_.norm_squared(b.phi_c, b.theta_c);
    }
    if (active_.empty()) throw std::invalid_argument("beam plan has no active beams");
}

double BeamformingModel::alpha() const { return alpha_; }

double BeamformingModel::beam_gain(double user_phi, double user_theta, int beam_index) const {
    const Beam& b = plan_->beams[beam_index];
    double cross = kernel_.cross_magnitude(user_phi, user_theta, b.phi_c, b.theta_c);
    return cross * cross;
}

double BeamformingModel::beam_gain_direct(double user_phi, double user_theta,
                                          int beam_index) const {
    const Beam& b = plan_->beams[beam_index];
    ResponseVector au = response_vector(*foa_, user_phi, user_theta, kernel_.lambda_m());
    ResponseVector ac = response_vector(*foa_, b.phi_c, b.theta_c, kernel_.lambda_m());
    std::complex<double> dot{0.0, 0.0};
    for (size_t i = 0; i < au.entries.size(); ++i) {
        dot += std::conj(au.entries[i]) * ac.entries[i];
    }
    return std::norm(dot);
}

double BeamformingModel::interference_sum(double user_phi, double user_theta, int serving_beam,
                                          double p_w) const {
    const Beam& serving = plan_->beams[serving_beam];
    double sum = 0.0;
    for (int idx : active_) {
        if (idx == serving_beam) continue;
        const Beam& b = plan_->beams[idx];
        if (b.color != serving.color) continue;
        sum += beam_gain(user_phi, user_theta, idx) * p_w;
    }
    return sum / alpha_;
}

double BeamformingModel::sinr_db(double user_phi, double user_theta, int serving_beam, double p_w,
                                 double beta_lin, double sigma2_w) const {
    if (!(sigma2_w > 0.0)) throw std::invalid_argument("noise power must be positive");
    double signal = beam_gain(user_phi, user_theta, serving_beam) * p_w / alpha_;
    double interference = interference_sum(user_phi, user_theta, serving_beam, p_w);
    double gamma = signal / (sigma2_w / beta_lin + interference);
    return 10.0 * std::log10(gamma);
}

double BeamformingModel::sir_db(double user_phi, double user_theta, int serving_beam,
                                double p_w) const {
    double signal = beam_gain(user_phi, user_theta, serving_beam) * p_w / alpha_;
    double interference = interference_sum(user_phi, user_theta, serving_beam, p_w);
    if (interference <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / interference);
}

double BeamformingModel::snr_db(double user_phi, double user_theta, int serving_beam, double p_w,
                                double beta_lin, double sigma2_w) const {
    double signal = beam_gain(user_phi, user_theta, serving_beam) * p_w / alpha_;
    return 10.0 * std::log10(signal * beta_lin / sigma2_w);
}

double sinr_from_vectors(const ResponseVector& user,
                         const std::vector<ResponseVector>& beam_columns, int serving,
                         const std::vector<double>& powers_w, double beta_lin, double sigma2_w) {
    if (!(sigma2_w > 0.0)) throw std::invalid_argument("noise power must be positive");
    double alpha = 0.0;
    for (const ResponseVector& col : beam_columns) {
        for (const std::complex<double>& e : col.entries) alpha += std::norm(e);
    }
    auto gain = [&](int k) {
        std::complex<double> dot{0.0, 0.0};
        for (size_t i = 0; i < user.entries.size(); ++i) {
            dot += std::conj(user.entries[i]) * beam_columns[k].entries[i];
        }
        return std::norm(dot) / alpha;
    };
    double signal = gain(serving) * powers_w[serving];
    double interference = 0.0;
    for (size_t k = 0; k < beam_columns.size(); ++k) {
        if (static_cast<int>(k) == serving) continue;
        interference += gain(static_cast<int>(k)) * powers_w[k];
    }
    return 10.0 * std::log10(signal / (sigma2_w / beta_lin + interference));
}

}  // namespace foasim
