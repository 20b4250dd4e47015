// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include "foasim/scenario.hpp"

#include "json.hpp"

namespace foasim {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr int kMaxIterations = 10000;

std::string traffic_name(TrafficModel t) { return t == TrafficModel::T1 ? "T1" : "T2"; }
std::string channel_name(ChannelCondition c) { return c == ChannelCondition::C1 ? "C1" : "C2"; }

// Edge user of a candidate beam: on the hexagon circumradius, pointing at
// the nearest active co-channel beam (the worst interference direction),
// radially outward when no co-channel beam exists.
void worst_case_user(const BeamPlan& plan, int beam_index, double& yg, double& zg) {
    const Beam& b = plan.beams[beam_index];
    double best = 1e300;
    double ny = 0.0, nz = 0.0;
    for (const Beam& other : plan.beams) {
        if (!other.active || other.id == b.id || other.color != b.color) continue;
        double dy = other.yg_km - b.yg_km;
        double dz = other.zg_km - b.zg_km;
        double d2 = dy * dy + dz * dz;
        if (d2 < best) {
            best = d2;
            double d = std::sqrt(d2);
            ny = dy / d;
            nz = dz / d;
        }
    }
    if (best == 1e300) {
        double r = std::hypot(b.yg_km, b.zg_km);
        if (r > 1e-9) {
            ny = b.yg_km / r;
            nz = b.zg_km / r;
        } else {
            ny = 1.0;
        }
    }
    yg = b.yg_km + plan.beam_radius_km * ny;
    zg = b.zg_km + plan.beam_radius_km * nz;
}

// Candidate beams for the critical-link search: innermost, median-radius
// and outermost of the active set.
std::vector<int> candidate_beams(const BeamPlan& plan, bool include_median) {
    int inner = -1, outer = -1, median = -1;
    int k = plan.active_count();
    int seen = 0;
    for (const Beam& b : plan.beams) {
        if (!b.active) continue;
        ++seen;
        if (seen == 1) inner = b.id;
        if (seen == (k + 1) / 2) median = b.id;
        outer = b.id;
    }
    std::vector<int> out{inner};
    if (include_median && median != inner && median != outer) out.push_back(median);
    if (outer != inner) out.push_back(outer);
    return out;
}

}  // namespace

ScenarioCaseResult run_throughput_procedure(const ScenarioConfig& cfg, const CaseSelector& sel) {
    const double lambda = cfg.wavelength_m();
    FoAGeometry foa = cfg.build_formation();

    ScenarioCaseResult res;
    res.traffic = traffic_name(sel.traffic);
    res.channel = channel_name(sel.channel);

    PowerChain chain;
    chain.solar_dc_per_m2_w = cfg.solar_dc_per_m2_w;
    chain.array_surface_m2 = foa.array.panel_area_m2;
    chain.tx_platform_dc_ratio = cfg.tx_platform_dc_ratio;
    chain.dc_to_rf_efficiency = cfg.dc_to_rf_efficiency;
    chain.output_backoff_db = cfg.output_backoff_db;
    chain.antenna_losses_db = cfg.antenna_losses_db;

    double p_sat_w = cfg.rf_power_per_satellite_w > 0.0
                         ? cfg.rf_power_per_satellite_w
                         : rf_power_per_satellite_w(chain) *
                               std::pow(10.0, -cfg.output_backoff_db / 10.0);
    res.rf_power_per_satellite_w = p_sat_w;
    double total_rf_dbw = 10.0 * std::log10(foa.satellite_count() * p_sat_w);
    res.foa_total_rf_dbw = total_rf_dbw;

    CoverageCone cone = make_coverage_cone(cfg.h_sat_km, cfg.elevation_deg);
    double radius_km = beam_radius_km(foa, cfg.h_sat_km, lambda);
    res.beam_radius_km = radius_km;

    int reuse = sel.traffic == TrafficModel::T1 ? cfg.reuse_m_t1 : 1;
    BeamPlan plan = build_beam_lattice(cone, radius_km, sel.traffic, reuse);

    LossChain losses;
    losses.fspl_db = fspl_at_min_elevation_db(cfg.h_sat_km, cfg.elevation_deg, cfg.f0_hz);
    losses.atmospheric_db = cfg.atmospheric_db;
    losses.body_db = cfg.body_db;
    losses.fading_margin_db = cfg.fading_margin_db;
    losses.shadowing_db = sel.channel == ChannelCondition::C1 ? cfg.shadowing_db : 0.0;
    losses.demod_loss_db = cfg.demod_loss_db;
    losses.g_over_t_db = cfg.g_over_t_db;

    double bw_sinr = cfg.sinr_bandwidth_hz > 0.0 ? cfg.sinr_bandwidth_hz
                                                 : cfg.bandwidth_hz / reuse;
    double t_sys = std::pow(10.0, -cfg.g_over_t_db / 10.0);  // isotropic terminal
    double sigma2_w = kBoltzmann * t_sys * bw_sinr;
    double chain_db = losses.fspl_db + losses.atmospheric_db + losses.body_db +
                      losses.demod_loss_db + losses.shadowing_db + cfg.antenna_losses_db;
    double beta_lin = std::pow(10.0, -chain_db / 10.0);
    // back-off reduces the radiated power below the chain output
    double p_radiated_w = foa.satellite_count() * p_sat_w *
                          std::pow(10.0, -cfg.output_backoff_db / 10.0);

    PhaseErrorSet errors;
    const PhaseErrorSet* errors_ptr = nullptr;
    if (cfg.phi_bar_deg > 0.0) {
        errors = sample_phase_errors(cfg.phi_bar_deg * std::numbers::pi / 180.0,
                                     foa.satellite_count(), cfg.seed);
        errors_ptr = &errors;
    }
    BeamformingModel model(foa, plan, lambda, errors_ptr);

    PhyTable phy = default_phy_table();
    double band_per_beam = cfg.bandwidth_hz / reuse;
    int floor_row = -1;
    for (size_t i = 0; i < phy.rows.size(); ++i) {
        double tput = beam_throughput_mbps(phy.rows[i].spectral_efficiency, cfg.bandwidth_hz,
                                           reuse, cfg.bandwidth_efficiency);
        if (tput >= cfg.target_beam_rate_mbps) {
            floor_row = static_cast<int>(i);
            break;
        }
    }
    if (floor_row < 0) {
        throw ScenarioError("infeasible: no modulation row reaches the target beam rate of " +
                            std::to_string(cfg.target_beam_rate_mbps) + " Mbps in " +
                            std::to_string(band_per_beam / 1e6) + " MHz");
    }
    const double margin_deduction = cfg.fading_margin_db + cfg.demod_loss_db;
    const bool include_median = cfg.worst_case_candidates != "inner-outer";
    constexpr double kMarginEps = 1e-9;

    int k = plan.active_count();
    int iterations = 0;
    double gamma_db = 0.0;
    int binding_beam = 0;
    double user_phi = 0.0, user_theta = 0.0;

    // SINR of the most critical candidate beam at the current active set.
    auto evaluate = [&]() {
        double worst = 1e300;
        for (int b : candidate_beams(plan, include_median)) {
            double yg, zg;
            if (cfg.user_placement == "random") {
                UserPosition u = place_user(plan, b, cfg.user_seed + static_cast<unsigned>(b));
                yg = u.yg_km;
                zg = u.zg_km;
            } else {
                worst_case_user(plan, b, yg, zg);
            }
            double phi, theta;
            ground_to_angles(yg, zg, cfg.h_sat_km, phi, theta);
            double g = model.sinr_db(phi, theta, b, p_radiated_w, beta_lin, sigma2_w);
            if (g < worst) {
                worst = g;
                binding_beam = b;
                user_phi = phi;
                user_theta = theta;
            }
        }
        gamma_db = worst;
        return worst - margin_deduction;
    };

    int row = floor_row;
    bool repaired_this_row = false;
    int k_before_climb = k;
    const int top_row = static_cast<int>(phy.rows.size()) - 1;

    while (true) {
        if (++iterations > kMaxIterations) {
            throw ScenarioError("procedure did not converge within the iteration guard");
        }
        double effective = evaluate();
        double margin = effective - phy.rows[row].required_sinr_db;

        if (margin < -kMarginEps) {
            if (k <= 1) {
                if (row == floor_row) {
                    throw ScenarioError(
                        "infeasible: margin below the target rate row with a single beam");
                }
                // the climb overreached; restore the last feasible row
                --row;
                k = k_before_climb;
                plan.set_active_count(k);
                model.refresh_active_set();
                evaluate();
                break;
            }
            int knew = static_cast<int>(std::ceil(k * std::pow(10.0, margin / 10.0)));
            knew = std::clamp(knew, 1, k - 1);
            plan.set_active_count(knew);
            model.refresh_active_set();
            k = knew;
            repaired_this_row = true;
            continue;
        }

        if (row == top_row) break;
        double step = phy.rows[row + 1].required_sinr_db - phy.rows[row].required_sinr_db;
        if (repaired_this_row && margin < step - kMarginEps) break;
        k_before_climb = k;
        ++row;
        repaired_this_row = false;
    }

    double effective = gamma_db - margin_deduction;
    res.final_margin_db = effective - phy.rows[row].required_sinr_db;
    res.iterations = iterations;
    res.active_beams = k;
    res.spectral_efficiency = phy.rows[row].spectral_efficiency;
    res.required_phy_sinr_db = phy.rows[row].required_sinr_db;
    res.total_sinr_db = gamma_db;
    res.sir_db = model.sir_db(user_phi, user_theta, binding_beam, p_radiated_w);
    res.eirp_per_beam_dbw = eirp_per_beam_dbw(total_rf_dbw, boresight_gain_dbi(foa),
                                              cfg.antenna_losses_db, cfg.output_backoff_db, k);
    res.los_snr_db = los_snr_db(res.eirp_per_beam_dbw, losses, bw_sinr);
    res.beam_throughput_mbps = beam_throughput_mbps(selected->spectral_efficiency,
                                                    cfg.bandwidth_hz, reuse,
                                                    cfg.bandwidth_efficiency);
    res.aggregate_throughput_mbps = k * res.beam_throughput_mbps;
    res.coverage_area_km2 = coverage_area_km2(k, radius_km);
    res.area_throughput_mbps_km2 =
        area_throughput_mbps_km2(res.aggregate_throughput_mbps, res.coverage_area_km2);
    return res;
}

std::string case_result_json(const ScenarioConfig& cfg, const ScenarioCaseResult& r) {
    nlohmann::json j;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    j["config_hash"] = hash;
    j["scenario"] = cfg.name;
    j["traffic"] = r.traffic;
    j["channel"] = r.channel;
    j["rf_power_per_satellite_w"] = r.rf_power_per_satellite_w;
    j["foa_total_rf_dbw"] = r.foa_total_rf_dbw;
    j["eirp_per_beam_dbw"] = r.eirp_per_beam_dbw;
    j["los_snr_db"] = r.los_snr_db;
    j["sir_db"] = r.sir_db;
    j["total_sinr_db"] = r.total_sinr_db;
    j["spectral_efficiency"] = r.spectral_efficiency;
    j["required_phy_sinr_db"] = r.required_phy_sinr_db;
    j["beam_radius_km"] = r.beam_radius_km;
    j["beam_throughput_mbps"] = r.beam_throughput_mbps;
    j["active_beams"] = r.active_beams;
    j["aggregate_throughput_mbps"] = r.aggregate_throughput_mbps;
    j["coverage_area_km2"] = r.coverage_area_km2;
    j["area_throughput_mbps_km2"] = r.area_throughput_mbps_km2;
    j["iterations"] = r.iterations;
    j["final_margin_db"] = r.final_margin_db;
    return j.dump(2) + "\n";
}

namespace {

void write_table_row_csv(const ScenarioConfig& cfg, const ScenarioCaseResult& r,
                         const std::string& path) {
    std::ofstream out(path);
    out << "config_hash,scenario,traffic,channel,rf_power_per_satellite_w,foa_total_rf_dbw,"
           "eirp_per_beam_dbw,los_snr_db,sir_db,total_sinr_db,spectral_efficiency,"
           "required_phy_sinr_db,beam_radius_km,beam_throughput_mbps,active_beams,"
           "aggregate_throughput_mbps,coverage_area_km2,area_throughput_mbps_km2\n";
    char line[512];
    std::snprintf(line, sizeof(line),
                  "%016llx,%s,%s,%s,%.1f,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f,%.1f,%.2f,%.2f,%d,%.1f,"
                  "%.1f,%.4e\n",
                  static_cast<unsigned long long>(config_hash(cfg)), cfg.name.c_str(),
                  r.traffic.c_str(), r.channel.c_str(), r.rf_power_per_satellite_w,
                  r.foa_total_rf_dbw, r.eirp_per_beam_dbw, r.los_snr_db, r.sir_db, r.total_sinr_db,
                  r.spectral_efficiency, r.required_phy_sinr_db, r.beam_radius_km,
                  r.beam_throughput_mbps, r.active_beams, r.aggregate_throughput_mbps,
                  r.coverage_area_km2, r.area_throughput_mbps_km2);
    out << line;
}

std::string timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::gmtime(&t));
    return buf;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_root,
                          bool timestamped_dir, int pattern_resolution) {
    namespace fs = std::filesystem;
    RunArtifacts artifacts;
    fs::path root = fs::path(out_root);
    if (timestamped_dir) root /= "run-" + timestamp_now();
    root /= cfg.name;
    artifacts.output_dir = root.string();

    const double lambda = cfg.wavelength_m();
    FoAGeometry foa = cfg.build_formation();
    CoverageCone cone = make_coverage_cone(cfg.h_sat_km, cfg.elevation_deg);
    int resolution = pattern_resolution > 0 ? pattern_resolution : cfg.grid_resolution;

    PhaseErrorSet errors;
    const PhaseErrorSet* errors_ptr = nullptr;
    if (cfg.phi_bar_deg > 0.0) {
        errors = sample_phase_errors(cfg.phi_bar_deg * std::numbers::pi / 180.0,
                                     foa.satellite_count(), cfg.seed);
        errors_ptr = &errors;
    }
    PatternGrid grid = make_pattern_grid(foa, lambda, cone.theta_bar_deg, resolution, errors_ptr);

    for (const CaseSelector& sel : cfg.cases) {
        ScenarioCaseResult r = run_throughput_procedure(cfg, sel);
        std::string case_name = traffic_name(sel.traffic) + "-" + channel_name(sel.channel);
        fs::path dir = root / case_name;
        fs::create_directories(dir);
        {
            std::ofstream out(dir / "result.json");
            out << case_result_json(cfg, r);
        }
        write_table_row_csv(cfg, r, (dir / "table_row.csv").string());
        export_pattern_csv(grid, (dir / "pattern.csv").string(), (dir / "pattern.json").string());

        int reuse = sel.traffic == TrafficModel::T1 ? cfg.reuse_m_t1 : 1;
        BeamPlan plan = build_beam_lattice(cone, r.beam_radius_km, sel.traffic, reuse);
        plan.keep_innermost_active(r.active_beams);
        export_beam_plan_csv(plan, (dir / "beams.csv").string());

        artifacts.results.push_back(r);
    }
    return artifacts;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const std::string& parameter,
                              const std::vector<double>& values) {
    if (parameter != "S" && parameter != "Delta_over_L" && parameter != "phi_bar" &&
        parameter != "winglet_rows") {
        throw std::invalid_argument("sweep parameter must be S, Delta_over_L, phi_bar or winglet_rows");
    }
    if (cfg.cases.empty()) throw std::invalid_argument("sweep needs at least one configured case");
    const CaseSelector sel = cfg.cases.front();

    auto run_point = [cfg, parameter, sel](double value) -> SweepPoint {
        ScenarioConfig point = cfg;
        if (parameter == "S") point.satellites_s = static_cast<int>(std::lround(value));
        else if (parameter == "Delta_over_L") point.delta_over_l = value;
        else if (parameter == "phi_bar") point.phi_bar_deg = value;
        else point.winglet_rows = static_cast<int>(std::lround(value));
        SweepPoint out;
        out.value = value;
        try {
            ScenarioCaseResult r = run_throughput_procedure(point, sel);
            out.rho = r.area_throughput_mbps_km2;
        } catch (const ScenarioError&) {
            out.rho = std::nullopt;
        } catch (const std::invalid_argument&) {
            out.rho = std::nullopt;  // e.g. non-square S in a grid layout
        }
        return out;
    };

    std::vector<std::future<SweepPoint>> futures;
    futures.reserve(values.size());
    for (double v : values) futures.push_back(std::async(std::launch::async, run_point, v));
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (auto& f : futures) points.push_back(f.get());
    return points;
}

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& parameter,
                     const std::string& path, std::uint64_t cfg_hash) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    char head[96];
    std::snprintf(head, sizeof(head), "# config_hash=%016llx\n",
                  static_cast<unsigned long long>(cfg_hash));
    out << head << parameter << ",rho_mbps_km2\n";
    for (const SweepPoint& p : points) {
        out << p.value << ",";
        if (p.rho) out << *p.rho;
        out << "\n";
    }
}

}  // namespace foasim
