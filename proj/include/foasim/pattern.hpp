// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "foasim/geometry.hpp"

namespace foasim {

/// Wave vector of a plane wave toward azimuth phi / elevation theta (rad).
/// Magnitude is 2*pi/lambda for every direction.
Vec3 wave_vector(double phi, double theta, double lambda);

/// cos^q element pattern amplitude, zero for |theta| >= 90 deg.
double element_gain(double theta, double gamma_linear);

struct ResponseVector {
    std::vector<std::complex<double>> entries;  // length S * N', satellite-major
    double phi = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
};

ResponseVector response_vector(const FoAGeometry& foa, double phi, double theta, double lambda);

/// Per-satellite phase offsets, |phi_s[i]| <= bound.
struct PhaseErrorSet {
    std::vector<double> phi_s;  // rad
    double bound = 0.0;         // rad
    std::uint64_t seed = 0;
};

/// S i.i.d. draws from U[-phi_bar, +phi_bar], reproducible across platforms
/// for a fixed seed.
PhaseErrorSet sample_phase_errors(double phi_bar_rad, int s, std::uint64_t seed);

/// Normalized power pattern of the boresight-steered formation, by direct
/// summation over every element. Boresight value is Gamma * N' * S.
double pattern_direct(const FoAGeometry& foa, double phi, double theta, double lambda,
                      const PhaseErrorSet* errors = nullptr);

/// Same quantity through the separable kernel products; square grids only.
double pattern_closed_form(int n, int s, double d, double delta, double gamma_linear,
                           double phi, double theta, double lambda);

/// sin(pi*m*t)/sin(pi*t) with the removable singularity evaluated as its
/// signed limit m*(-1)^(k*(m-1)) at integer t=k.
double dirichlet_ratio(int m, double t);

/// Boresight gain Gamma * N' * S in dBi.
double boresight_gain_dbi(const FoAGeometry& foa);

/// Inner products a(dir1)^H a(dir2) for the structured layouts without
/// touching individual elements; falls back to the direct sum for explicit
/// center lists. Exact for panels in the x=0 plane.
class ResponseKernel {
  public:
    ResponseKernel(const FoAGeometry& foa, double lambda);

    /// Per-satellite phase offsets applied to the second argument of the
    /// cross product, modeling array miscalibration. Pass nullptr to clear.
    void set_phase_errors(const PhaseErrorSet* errors);

    /// |a^H(phi1,theta1) a(phi2,theta2)|
    double cross_magnitude(double phi1, double theta1, double phi2, double theta2) const;
    /// ||a(phi,theta)||^2 = N' * S * g(theta)^2
    double norm_squared(double phi, double theta) const;
    double lambda_m() const { return lambda_; }

  private:
    double lattice_sum(double uy, double uz) const;  // sum over all elements of exp(j k r)
    double panel_sum(double uy, double uz) const;

    const FoAGeometry* foa_;
    double lambda_;
    const PhaseErrorSet* errors_ = nullptr;
    int sqrt_s_ = 0;       // 0 when layout is not a square grid
    int sqrt_n_ = 0;
};

struct PatternGrid {
    std::vector<double> phi_deg;    // axis
    std::vector<double> theta_deg;  // axis
    std::vector<double> gain_dbi;   // row-major, theta outer, phi inner
    double boresight_dbi = 0.0;
    double lambda = 0.0;
    std::uint64_t geometry_hash = 0;

    double at(int it, int ip) const { return gain_dbi[static_cast<size_t>(it) * phi_deg.size() + ip]; }
};

/// Sample the normalized pattern over [-extent, +extent] deg in both axes.
/// Uses the kernel fast path for structured layouts; direct summation with
/// per-satellite phase errors when an error set is given.
PatternGrid make_pattern_grid(const FoAGeometry& foa, double lambda, double extent_deg,
                              int resolution, const PhaseErrorSet* errors = nullptr);

void export_pattern_csv(const PatternGrid& grid, const std::string& csv_path,
                        const std::string& sidecar_json_path);

struct GratingLobeReport {
    double level_db_below_boresight = 0.0;  // positive number of dB below the peak
    double phi_deg = 0.0;
    double theta_deg = 0.0;
};

/// Peak gain outside the main-lobe exclusion disk, relative to boresight.
GratingLobeReport grating_lobe_report(const PatternGrid& grid, double mainlobe_exclusion_deg);

/// Half-power on-ground beam radius in km from the azimuth cut of the
/// pattern, located by coarse scan followed by bisection.
double beam_radius_km(const FoAGeometry& foa, double h_sat_km, double lambda);

}  // namespace foasim
