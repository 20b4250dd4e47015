// SPDX-License-Identifier: Apache-2.0
//
// foasim command line: pattern export, scenario runs, parameter sweeps,
// feed network sizing and reference-table validation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"

#include "foasim/scenario.hpp"

namespace {

using namespace foasim;

int cmd_pattern(const std::string& config, const std::string& out_dir, int resolution,
                double phi_bar_deg, std::uint64_t seed) {
    ScenarioConfig cfg = load_config(config);
    if (resolution > 0) cfg.grid_resolution = resolution;
    if (phi_bar_deg >= 0.0) cfg.phi_bar_deg = phi_bar_deg;
    cfg.seed = seed ? seed : cfg.seed;

    FoAGeometry foa = cfg.build_formation();
    CoverageCone cone = make_coverage_cone(cfg.h_sat_km, cfg.elevation_deg);
    PhaseErrorSet errors;
    const PhaseErrorSet* errors_ptr = nullptr;
    if (cfg.phi_bar_deg > 0.0) {
        errors = sample_phase_errors(cfg.phi_bar_deg * std::numbers::pi / 180.0,
                                     foa.satellite_count(), cfg.seed);
        errors_ptr = &errors;
    }
    PatternGrid grid = make_pattern_grid(foa, cfg.wavelength_m(), cone.theta_bar_deg,
                                         cfg.grid_resolution, errors_ptr);
    std::filesystem::create_directories(out_dir);
    std::string base = out_dir + "/" + cfg.name;
    export_pattern_csv(grid, base + "-pattern.csv", base + "-pattern.json");
    export_geometry_csv(foa, base + "-geometry.csv");
    GratingLobeReport lobes = grating_lobe_report(grid, cone.theta_bar_deg / 10.0);
    std::printf("%s: boresight %.2f dBi, peak sidelobe %.2f dB below boresight at "
                "(phi=%.3f, theta=%.3f) deg\n",
                cfg.name.c_str(), grid.boresight_dbi, lobes.level_db_below_boresight,
                lobes.phi_deg, lobes.theta_deg);
    std::printf("wrote %s-pattern.csv / -pattern.json / -geometry.csv\n", base.c_str());
    return 0;
}

void print_case_line(const ScenarioCaseResult& r) {
    std::printf("  %s,%s: K=%d eta=%.2f req=%.1f dB SINR=%.2f dB SIR=%.2f dB beam=%.1f Mbps "
                "aggregate=%.1f Gbps area=%.0f km2 rho=%.3e Mbps/km2\n",
                r.traffic.c_str(), r.channel.c_str(), r.active_beams, r.spectral_efficiency,
                r.required_phy_sinr_db, r.total_sinr_db, r.sir_db, r.beam_throughput_mbps,
                r.aggregate_throughput_mbps / 1e3, r.coverage_area_km2,
                r.area_throughput_mbps_km2);
}

bool within(double value, double reference, double rel_tol) {
    return std::abs(value - reference) <= rel_tol * std::abs(reference);
}

// Prints the comparison against the bundled reference values; returns the
// number of rows outside tolerance.
int diff_against_reference(const ScenarioConfig& cfg, const ScenarioCaseResult& r) {
    const ReferenceRow* ref = find_reference(cfg.name, r.traffic, r.channel);
    if (!ref) return 0;
    struct Check {
        const char* what;
        double got;
        double want;
        double rel_tol;
    } checks[] = {
        {"active beams", static_cast<double>(r.active_beams), ref->active_beams, 0.10},
        {"aggregate Mbps", r.aggregate_throughput_mbps, ref->aggregate_mbps, 0.15},
        {"coverage km2", r.coverage_area_km2, ref->coverage_area_km2, 0.10},
        {"rho Mbps/km2", r.area_throughput_mbps_km2, ref->rho_mbps_km2, 0.15},
        {"beam radius km", r.beam_radius_km, ref->beam_radius_km, 0.15},
        {"spectral efficiency", r.spectral_efficiency, ref->spectral_efficiency, 1e-9},
    };
    int failures = 0;
    for (const Check& c : checks) {
        bool ok = within(c.got, c.want, c.rel_tol);
        std::printf("    %-20s got %12.4f want %12.4f (tol %4.0f%%) %s\n", c.what, c.got, c.want,
                    c.rel_tol * 100.0, ok ? "ok" : "OUT OF TOLERANCE");
        failures += ok ? 0 : 1;
    }
    return failures;
}

int cmd_run(const std::string& config, const std::string& out_dir, int resolution, bool diff) {
    ScenarioConfig cfg = load_config(config);
    RunArtifacts art = run_scenario(cfg, out_dir, true, resolution > 0 ? resolution : 201);
    std::printf("scenario %s -> %s\n", cfg.name.c_str(), art.output_dir.c_str());
    int failures = 0;
    for (const ScenarioCaseResult& r : art.results) {
        print_case_line(r);
        if (diff) failures += diff_against_reference(cfg, r);
    }
    return failures == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& config, const std::string& parameter,
              std::vector<double> values, const std::string& out_csv) {
    ScenarioConfig cfg = load_config(config);
    std::vector<SweepPoint> points = sweep(cfg, parameter, values);
    write_sweep_csv(points, parameter, out_csv, config_hash(cfg));
    for (const SweepPoint& p : points) {
        if (p.rho) std::printf("  %s=%g rho=%.4e\n", parameter.c_str(), p.value, *p.rho);
        else std::printf("  %s=%g infeasible\n", parameter.c_str(), p.value);
    }
    std::printf("wrote %s\n", out_csv.c_str());
    return 0;
}

int cmd_feednet(const std::string& config, int beams_k) {
    ScenarioConfig cfg = load_config(config);
    FeedNetSpec spec;
    spec.beams_k = beams_k;
    spec.colors_c = 1;
    spec.elements_n = cfg.elements_n;
    spec.satellites_s = cfg.satellites_s;
    spec.bandwidth_per_beam_hz = cfg.bandwidth_hz;
    std::cout << feednet_report_json(spec);

    FoAGeometry foa = cfg.build_formation();
    double ymin = 0.0, ymax = 0.0;
    for (const Vec3& c : foa.satellite_centers) {
        ymin = std::min(ymin, c.y);
        ymax = std::max(ymax, c.y);
    }
    double d_over_lambda = ((ymax - ymin) + foa.array.bounding_extent()) / cfg.wavelength_m();
    double theta = coverage_angle_deg(cfg.h_sat_km, cfg.elevation_deg);
    NarrowbandCheck nb = narrowband_check(cfg.bandwidth_hz, cfg.f0_hz, d_over_lambda, theta);
    std::printf("narrowband condition: B/f0=%.4f vs bound %.4f (margin %.0fx) -> %s\n", nb.ratio,
                nb.bound, nb.margin_factor,
                nb.narrowband ? "narrowband" : "wideband (true-delay beamforming needed)");
    return 0;
}

int cmd_validate(const std::string& out_dir) {
    int failures = 0;
    for (const std::string& name : {"r-geo", "leo", "w1", "w2", "w3"}) {
        ScenarioConfig cfg = preset_config(name);
        std::printf("validating %s\n", name.c_str());
        for (const CaseSelector& sel : cfg.cases) {
            ScenarioCaseResult r = run_throughput_procedure(cfg, sel);
            print_case_line(r);
            failures += diff_against_reference(cfg, r);
        }
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(out_dir + "/validate-summary.txt");
        out << "failures: " << failures << "\n";
    }
    std::printf("validate: %d row(s) out of tolerance\n", failures);
    return failures == 0 ? 0 : 2;
}

int cmd_config(const std::string& name, const std::string& out_path) {
    ScenarioConfig cfg = load_config(name);
    std::string text = config_to_json(cfg);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formation-of-arrays antenna and multi-beam network simulator"};
    app.require_subcommand(1);

    std::string config = "r-geo";
    std::string out_dir = "runs";
    std::string out_csv = "sweep.csv";
    std::string parameter = "S";
    std::string preset_out;
    std::vector<double> values;
    int resolution = 0;
    int beams_k = 0;
    double phi_bar = -1.0;
    std::uint64_t seed = 0;
    bool diff = false;

    auto* pattern = app.add_subcommand("pattern", "export the radiation pattern grid");
    pattern->add_option("-c,--config", config, "config path or preset name");
    pattern->add_option("-o,--out", out_dir, "output directory");
    pattern->add_option("-r,--resolution", resolution, "grid resolution per axis");
    pattern->add_option("--phi-bar", phi_bar, "max per-satellite phase error, degrees");
    pattern->add_option("--seed", seed, "phase error seed");

    auto* run = app.add_subcommand("run", "run the scenario cases and export artifacts");
    run->add_option("-c,--config", config, "config path or preset name");
    run->add_option("-o,--out", out_dir, "output directory");
    run->add_option("-r,--resolution", resolution, "pattern grid resolution");
    run->add_flag("--diff", diff, "compare against the bundled reference tables");

    auto* sw = app.add_subcommand("sweep", "run the procedure across parameter values");
    sw->add_option("-c,--config", config, "config path or preset name");
    sw->add_option("-p,--parameter", parameter, "S | Delta_over_L | phi_bar | winglet_rows");
    sw->add_option("-v,--values", values, "parameter values")->required();
    sw->add_option("-o,--out", out_csv, "output csv path");

    auto* fn = app.add_subcommand("feednet", "size the feeding/beamforming network");
    fn->add_option("-c,--config", config, "config path or preset name");
    fn->add_option("-k,--beams", beams_k, "active beam count")->required();

    auto* val = app.add_subcommand("validate", "run presets against the reference tables");
    val->add_option("-o,--out", out_dir, "summary output directory");

    auto* cfgcmd = app.add_subcommand("config", "print or export a preset config");
    cfgcmd->add_option("-c,--config", config, "config path or preset name");
    cfgcmd->add_option("-o,--out", preset_out, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pattern->parsed()) return cmd_pattern(config, out_dir, resolution, phi_bar, seed);
        if (run->parsed()) return cmd_run(config, out_dir, resolution, diff);
        if (sw->parsed()) return cmd_sweep(config, parameter, values, out_csv);
        if (fn->parsed()) return cmd_feednet(config, beams_k);
        if (val->parsed()) return cmd_validate("");
        if (cfgcmd->parsed()) return cmd_config(config, preset_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
