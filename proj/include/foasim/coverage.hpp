// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace foasim {

/// One-sided coverage angle in degrees for a satellite at h_sat km seen
/// with minimum elevation epsilon.
double coverage_angle_deg(double h_sat_km, double epsilon_deg);

struct CoverageCone {
    double theta_bar_deg = 0.0;
    double h_sat_km = 0.0;
    double epsilon_deg = 0.0;
    double ground_radius_km = 0.0;  // h_sat * tan(theta_bar)
};

CoverageCone make_coverage_cone(double h_sat_km, double epsilon_deg);

enum class TrafficModel { T1, T2 };

struct Beam {
    int id = 0;
    double yg_km = 0.0;      // ground center, tangent plane
    double zg_km = 0.0;
    double phi_c = 0.0;      // angular center seen from the satellite, rad
    double theta_c = 0.0;
    int color = 0;           // 0..M-1
    bool active = true;
    bool can_activate = true;  // false for T2 cluster ring members
    int cluster = 0;           // T2 cluster id; 0 for T1
};

/// Hexagonal beam lattice over the coverage disk. Beams are ordered by
/// distance from nadir, innermost first, so deactivating a suffix removes
/// the outermost ones.
struct BeamPlan {
    std::vector<Beam> beams;
    double beam_radius_km = 0.0;  // hexagon circumradius
    int reuse_m = 1;
    TrafficModel traffic = TrafficModel::T1;
    int cluster_size = 1;         // 7 for T2
    double h_sat_km = 0.0;

    int active_count() const;
    /// Deactivate the outermost active beams until `keep` remain.
    void keep_innermost_active(int keep);
    /// Activate exactly the innermost `count` activation-eligible beams
    /// (every beam for T1, cluster centers for T2).
    void set_active_count(int count);
    /// Beam ids eligible for activation, innermost first.
    std::vector<int> eligible_ids() const;
};

BeamPlan build_beam_lattice(const CoverageCone& cone, double beam_radius_km,
                            TrafficModel traffic, int reuse_m);

/// K hexagonal cells of circumradius R: K * (3*sqrt(3)/2) * R^2.
double coverage_area_km2(int active_beams, double beam_radius_km);

/// Uniform draw over the beam's ground hexagon mapped to (phi, theta) rad
/// as seen from the satellite. Reproducible for a fixed seed.
struct UserPosition {
    double phi = 0.0;
    double theta = 0.0;
    double yg_km = 0.0;
    double zg_km = 0.0;
};

UserPosition place_user(const BeamPlan& plan, int beam_index, std::uint64_t seed);

/// Ground tangent-plane point to satellite-frame angles.
void ground_to_angles(double yg_km, double zg_km, double h_sat_km, double& phi, double& theta);

void export_beam_plan_csv(const BeamPlan& plan, const std::string& path);

}  // namespace foasim
