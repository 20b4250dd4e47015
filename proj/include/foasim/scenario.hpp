// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foasim/coverage.hpp"
#include "foasim/feednet.hpp"
#include "foasim/geometry.hpp"
#include "foasim/linkbudget.hpp"

namespace foasim {

struct CaseSelector {
    TrafficModel traffic = TrafficModel::T1;
    ChannelCondition channel = ChannelCondition::C1;
};

struct ScenarioConfig {
    std::string name;

    // orbit
    double h_sat_km = 0.0;
    double elevation_deg = 0.0;

    // frequency plan
    double f0_hz = 2.2e9;
    double bandwidth_hz = 60e6;
    int reuse_m_t1 = 3;                    // T2 always uses a single color
    double sinr_bandwidth_hz = 0.0;        // 0 = use B/M of the running case

    // formation
    int elements_n = 0;
    double d_over_lambda = 0.0;
    int satellites_s = 0;
    double delta_over_l = 1.25;
    double delta_m = 0.0;                  // explicit spacing wins over delta_over_l when > 0
    std::string layout = "square-grid";    // square-grid | quincunx | quincunx-diagonal
    int winglet_rows = 0;
    double element_gain_dbi = 0.0;
    double panel_area_m2 = 0.0;            // 0 = geometric default

    // power
    double solar_dc_per_m2_w = 200.0;
    double tx_platform_dc_ratio = 0.40;
    double dc_to_rf_efficiency = 0.35;
    double output_backoff_db = 2.0;
    double antenna_losses_db = 1.3;
    double rf_power_per_satellite_w = 0.0;  // 0 = derive from the chain with back-off

    // losses
    double atmospheric_db = 0.5;
    double body_db = 3.0;
    double fading_margin_db = 3.0;
    double shadowing_db = 4.0;
    double demod_loss_db = 1.0;
    double g_over_t_db = -31.6;

    // traffic / evaluation
    std::vector<CaseSelector> cases;
    double target_beam_rate_mbps = 10.7;
    double bandwidth_efficiency = 0.9083;
    std::string user_placement = "beam-edge";  // beam-edge | random
    std::string worst_case_candidates = "inner-median-outer";  // or inner-outer
    std::uint64_t user_seed = 1;

    // pattern diagnostics
    double phi_bar_deg = 0.0;
    int replications = 1;
    std::uint64_t seed = 12345;
    int grid_resolution = 1001;

    double wavelength_m() const;
    double derived_delta_m() const;
    ArrayGeometry build_array() const;
    FoAGeometry build_formation() const;
};

ScenarioConfig load_config(const std::string& path_or_preset);
std::vector<std::string> preset_names();
ScenarioConfig preset_config(const std::string& name);

std::string config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json_text(const std::string& text);
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// Run the iterative throughput procedure for one traffic/channel case:
/// fix the geometry and power chain, fill the coverage disk with beams,
/// then prune outermost beams / step the modulation table until the link
/// margin is non-negative but too small for the next table row.
ScenarioCaseResult run_throughput_procedure(const ScenarioConfig& cfg, const CaseSelector& sel);

struct ReferenceRow {
    std::string scenario;  // r-geo | leo | w1 | w2 | w3
    std::string traffic;
    std::string channel;
    double total_sinr_db;
    double spectral_efficiency;
    double required_phy_sinr_db;
    double beam_throughput_mbps;
    double active_beams;
    double aggregate_mbps;
    double coverage_area_km2;
    double rho_mbps_km2;
    double beam_radius_km;
};

const std::vector<ReferenceRow>& reference_rows();
const ReferenceRow* find_reference(const std::string& scenario, const std::string& traffic,
                                   const std::string& channel);

struct RunArtifacts {
    std::string output_dir;
    std::vector<ScenarioCaseResult> results;
};

/// Execute every configured case and write result.json, table_row.csv,
/// pattern.csv and beams.csv under out_root/<scenario>/<case>/.
RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_root,
                          bool timestamped_dir = true, int pattern_resolution = 0);

std::string case_result_json(const ScenarioConfig& cfg, const ScenarioCaseResult& r);

struct SweepPoint {
    double value = 0.0;
    std::optional<double> rho;  // empty when the point is infeasible
};

/// One procedure run per value of parameter in {S, Delta_over_L, phi_bar,
/// winglet_rows}; infeasible points are recorded, not fatal.
std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const std::string& parameter,
                              const std::vector<double>& values);

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& parameter,
                     const std::string& path, std::uint64_t cfg_hash);

}  // namespace foasim
