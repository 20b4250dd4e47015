// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foasim/coverage.hpp"
#include "foasim/geometry.hpp"
#include "foasim/pattern.hpp"

namespace foasim {

struct PowerChain {
    double solar_dc_per_m2_w = 200.0;
    double array_surface_m2 = 0.0;
    double tx_platform_dc_ratio = 0.0;    // fraction of DC available to the Tx chain
    double dc_to_rf_efficiency = 0.35;
    double output_backoff_db = 2.0;
    double antenna_losses_db = 1.3;
};

/// Maximum RF power one satellite array can transmit, before back-off.
double rf_power_per_satellite_w(const PowerChain& chain);

struct LossChain {
    double fspl_db = 0.0;
    double atmospheric_db = 0.5;
    double body_db = 3.0;
    double fading_margin_db = 3.0;
    double shadowing_db = 4.0;   // applied only under channel C1
    double demod_loss_db = 1.0;
    double g_over_t_db = -31.6;
};

enum class ChannelCondition { C1, C2 };  // C1 adds tree shadowing

struct PhyRow {
    double required_sinr_db;
    double spectral_efficiency;  // b/s/Hz
};

struct PhyTable {
    std::vector<PhyRow> rows;  // strictly increasing in both columns
};

/// AWGN link-level table, required SINR -7..+3 dB.
PhyTable default_phy_table();

/// Highest-efficiency row whose threshold is at most effective_sinr_db +
/// slack; nullopt signals outage. The slack absorbs rounding when feeding
/// published one-decimal figures.
std::optional<PhyRow> phy_select(double effective_sinr_db, const PhyTable& table,
                                 double slack_db = 0.0);

/// eta * (B/M) * bw_efficiency, in Mbps.
double beam_throughput_mbps(double eta, double bandwidth_hz, int reuse_m, double bw_efficiency);

/// total_rf - backoff + directivity - antenna_losses - 10 log10(K).
double eirp_per_beam_dbw(double total_rf_dbw, double directivity_dbi, double antenna_losses_db,
                         double backoff_db, int active_beams);

/// Line-of-sight SNR: EIRP + G/T + 228.6 - 10log10(BW) - FSPL - atmospheric
/// - body - demod. Shadowing and the fading margin are applied downstream.
double los_snr_db(double eirp_dbw, const LossChain& losses, double bandwidth_hz);

double area_throughput_mbps_km2(double aggregate_mbps, double area_km2);

/// Free-space path loss for the slant range at minimum elevation
/// (spherical Earth), the worst-case design point.
double fspl_at_min_elevation_db(double h_sat_km, double epsilon_deg, double f0_hz);
double slant_range_km(double h_sat_km, double epsilon_deg);

/// Beamforming with one steering column per active beam, columns jointly
/// trace-normalized. Inner products go through the structured-layout kernel.
class BeamformingModel {
  public:
    /// errors, when given, perturb the transmit response per satellite and
    /// must outlive the model.
    BeamformingModel(const FoAGeometry& foa, const BeamPlan& plan, double lambda,
                     const PhaseErrorSet* errors = nullptr);

    /// tr(V^H V) normalization over the current active set.
    double alpha() const;
    /// |a^H(user) v_k|^2 for active beam k (index into plan.beams).
    double beam_gain(double user_phi, double user_theta, int beam_index) const;
    /// Explicit response-vector route, for tests.
    double beam_gain_direct(double user_phi, double user_theta, int beam_index) const;

    /// SINR for a user served by beam k. Interference runs over the active
    /// co-channel beams; p_w is the common transmit power weight in watts,
    /// beta_lin the linear path attenuation, sigma2_w the noise power.
    double sinr_db(double user_phi, double user_theta, int serving_beam, double p_w,
                   double beta_lin, double sigma2_w) const;
    /// Interference-only ratio (sigma2 = 0); infinite for a lone beam.
    double sir_db(double user_phi, double user_theta, int serving_beam, double p_w) const;
    /// Noise-only ratio at the user position.
    double snr_db(double user_phi, double user_theta, int serving_beam, double p_w,
                  double beta_lin, double sigma2_w) const;

    void refresh_active_set();

  private:
    double interference_sum(double user_phi, double user_theta, int serving_beam,
                            double p_w) const;

    const FoAGeometry* foa_;
    const BeamPlan* plan_;
    ResponseKernel kernel_;
    std::vector<int> active_;  // beam indices
    double alpha_ = 0.0;
};

/// Eq.-style SINR on explicit vectors, used by tests against the kernel
/// path: gamma = |a^H v_k|^2 p_k / (sigma^2/beta + sum_i |a^H v_i|^2 p_i).
double sinr_from_vectors(const ResponseVector& user,
                         const std::vector<ResponseVector>& beam_columns, int serving,
                         const std::vector<double>& powers_w, double beta_lin, double sigma2_w);

struct ScenarioCaseResult {
    std::string traffic;   // "T1" | "T2"
    std::string channel;   // "C1" | "C2"
    double rf_power_per_satellite_w = 0.0;
    double foa_total_rf_dbw = 0.0;
    double eirp_per_beam_dbw = 0.0;
    double los_snr_db = 0.0;
    double sir_db = 0.0;
    double total_sinr_db = 0.0;
    double spectral_efficiency = 0.0;
    double required_phy_sinr_db = 0.0;
    double beam_radius_km = 0.0;
    double beam_throughput_mbps = 0.0;
    int active_beams = 0;
    double aggregate_throughput_mbps = 0.0;
    double coverage_area_km2 = 0.0;
    double area_throughput_mbps_km2 = 0.0;
    int iterations = 0;
    double final_margin_db = 0.0;
};

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace foasim
