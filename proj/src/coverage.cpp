// SPDX-License-Identifier: Apache-2.0
#include "foasim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace foasim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEarthRadiusKm = 6371.0;

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Hex lattice basis for pointy-top hexagons of circumradius R:
// center(i,j) = i*(sqrt(3)R, 0) + j*(sqrt(3)R/2, 1.5R).
void axial_to_ground(int i, int j, double r, double& y, double& z) {
    y = std::numbers::sqrt3 * r * (i + 0.5 * j);
    z = 1.5 * r * j;
}

bool inside_hexagon(double dy, double dz, double r) {
    // pointy-top: vertices at (0, +-R), (+-sqrt(3)R/2, +-R/2)
    if (std::abs(dy) > std::numbers::sqrt3 * r / 2.0) return false;
    return std::abs(dz) <= r - std::abs(dy) / std::numbers::sqrt3;
}

// Decompose an axial site into the 7-beam cluster lattice with basis
// (2,1) and (-1,3); returns the cluster coordinates and whether the site
// is the cluster center.
void cluster_of(int i, int j, int& cm, int& cn, bool& is_center) {
    double fm = (3.0 * i + j) / 7.0;
    double fn = (-i + 2.0 * j) / 7.0;
    int bm = static_cast<int>(std::lround(fm));
    int bn = static_cast<int>(std::lround(fn));
    for (int dm = -1; dm <= 1; ++dm) {
        for (int dn = -1; dn <= 1; ++dn) {
            int m = bm + dm, n = bn + dn;
            int li = i - (2 * m - n);
            int lj = j - (m + 3 * n);
            int norm = li * li + li * lj + lj * lj;  // hex distance metric
            if (norm <= 1) {
                cm = m;
                cn = n;
                is_center = (norm == 0);
                return;
            }
        }
    }
    throw std::logic_error("cluster decomposition failed");
}

}  // namespace

double coverage_angle_deg(double h_sat_km, double epsilon_deg) {
    if (!(h_sat_km > 0.0)) throw std::invalid_argument("satellite height must be positive");
    if (epsilon_deg < 0.0 || epsilon_deg > 90.0) {
        throw std::invalid_argument("elevation must lie in [0, 90] degrees");
    }
    double eps = epsilon_deg * kPi / 180.0;
    double s = kEarthRadiusKm / (kEarthRadiusKm + h_sat_km) * std::cos(eps);
    return std::asin(s) * 180.0 / kPi;
}

CoverageCone make_coverage_cone(double h_sat_km, double epsilon_deg) {
    CoverageCone cone;
    cone.h_sat_km = h_sat_km;
    cone.epsilon_deg = epsilon_deg;
    cone.theta_bar_deg = coverage_angle_deg(h_sat_km, epsilon_deg);
    cone.ground_radius_km = h_sat_km * std::tan(cone.theta_bar_deg * kPi / 180.0);
    return cone;
}

int BeamPlan::active_count() const {
    int k = 0;
    for (const Beam& b : beams) k += b.active ? 1 : 0;
    return k;
}

void BeamPlan::keep_innermost_active(int keep) {
    int seen = 0;
    for (Beam& b : beams) {
        if (!b.active) continue;
        ++seen;
        if (seen > keep) b.active = false;
    }
}

std::vector<int> BeamPlan::eligible_ids() const {
    std::vector<int> ids;
    for (const Beam& b : beams) {
        if (b.can_activate) ids.push_back(b.id);
    }
    return ids;
}

void BeamPlan::set_active_count(int count) {
    int seen = 0;
    for (Beam& b : beams) {
        if (!b.can_activate) {
            b.active = false;
            continue;
        }
        ++seen;
        b.active = seen <= count;
    }
}

void ground_to_angles(double yg_km, double zg_km, double h_sat_km, double& phi, double& theta) {
    phi = std::atan(yg_km / h_sat_km);
    theta = std::atan(zg_km * std::cos(phi) / h_sat_km);
}

BeamPlan build_beam_lattice(const CoverageCone& cone, double beam_radius_km,
                            TrafficModel traffic, int reuse_m) {
    if (!(beam_radius_km > 0.0)) throw std::invalid_argument("beam radius must be positive");
    if (reuse_m < 1) throw std::invalid_argument("reuse factor must be at least 1");
    if (traffic == TrafficModel::T2 && reuse_m != 1) {
        throw std::invalid_argument("isolated-cluster traffic uses a single color");
    }

    BeamPlan plan;
    plan.beam_radius_km = beam_radius_km;
    plan.reuse_m = reuse_m;
    plan.traffic = traffic;
    plan.cluster_size = traffic == TrafficModel::T2 ? 7 : 1;
    plan.h_sat_km = cone.h_sat_km;

    struct Site {
        int i, j;
        double y, z, r2;
        int cluster_m, cluster_n;
        bool cluster_center;
    };
    std::vector<Site> sites;
    double rg = cone.ground_radius_km;
    int span = static_cast<int>(std::ceil(rg / beam_radius_km)) + 2;
    for (int j = -span; j <= span; ++j) {
        for (int i = -span; i <= span; ++i) {
            double y, z;
            axial_to_ground(i, j, beam_radius_km, y, z);
            double r2 = y * y + z * z;
            if (r2 > rg * rg) continue;
            Site s{i, j, y, z, r2, 0, 0, true};
            if (traffic == TrafficModel::T2) {
                cluster_of(i, j, s.cluster_m, s.cluster_n, s.cluster_center);
            }
            sites.push_back(s);
        }
    }
    if (sites.empty()) {
        // beam larger than the disk: single beam at nadir
        sites.push_back({0, 0, 0.0, 0.0, 0.0, 0, 0, true});
    }
    std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
        if (a.r2 != b.r2) return a.r2 < b.r2;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    });

    std::unordered_map<long long, int> cluster_ids;
    plan.beams.reserve(sites.size());
    for (size_t k = 0; k < sites.size(); ++k) {
        const Site& s = sites[k];
        Beam b;
        b.id = static_cast<int>(k);
        b.yg_km = s.y;
        b.zg_km = s.z;
        ground_to_angles(s.y, s.z, cone.h_sat_km, b.phi_c, b.theta_c);
        if (traffic == TrafficModel::T1) {
            b.color = reuse_m == 1 ? 0 : (((s.i - s.j) % reuse_m) + reuse_m) % reuse_m;
            b.active = true;
            b.can_activate = true;
            b.cluster = 0;
        } else {
            long long key = (static_cast<long long>(s.cluster_m) << 32) ^
                            (static_cast<long long>(s.cluster_n) & 0xffffffffLL);
            auto [it, inserted] = cluster_ids.try_emplace(key, static_cast<int>(cluster_ids.size()));
            b.cluster = it->second;
            b.color = 0;
            b.active = s.cluster_center;
            b.can_activate = s.cluster_center;
        }
        plan.beams.push_back(b);
    }
    return plan;
}

double coverage_area_km2(int active_beams, double beam_radius_km) {
    if (active_beams < 1) throw std::invalid_argument("need at least one active beam");
    double hex = 1.5 * std::numbers::sqrt3 * beam_radius_km * beam_radius_km;
    return active_beams * hex;
}

UserPosition place_user(const BeamPlan& plan, int beam_index, std::uint64_t seed) {
    const Beam& b = plan.beams.at(beam_index);
    double r = plan.beam_radius_km;
    SplitMix64 rng(seed);
    double dy = 0.0, dz = 0.0;
    for (int tries = 0; tries < 10000; ++tries) {
        dy = (2.0 * rng.uniform01() - 1.0) * std::numbers::sqrt3 * r / 2.0;
        dz = (2.0 * rng.uniform01() - 1.0) * r;
        if (inside_hexagon(dy, dz, r)) break;
    }
    UserPosition u;
    u.yg_km = b.yg_km + dy;
    u.zg_km = b.zg_km + dz;
    ground_to_angles(u.yg_km, u.zg_km, plan.h_sat_km, u.phi, u.theta);
    return u;
}

void export_beam_plan_csv(const BeamPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "beam_id,yg_km,zg_km,phi_deg,theta_deg,color,active,cluster_id\n";
    char line[160];
    for (const Beam& b : plan.beams) {
        std::snprintf(line, sizeof(line), "%d,%.6f,%.6f,%.6f,%.6f,%d,%d,%d\n", b.id, b.yg_km,
                      b.zg_km, b.phi_c * 180.0 / kPi, b.theta_c * 180.0 / kPi, b.color,
                      b.active ? 1 : 0, b.cluster);
        out << line;
    }
}

}  // namespace foasim
