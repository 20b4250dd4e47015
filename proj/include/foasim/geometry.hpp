// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace foasim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Element layout of one satellite panel. All offsets lie in the x=0 plane
/// and are expressed in meters relative to the panel center.
struct ArrayGeometry {
    std::vector<Vec3> element_offsets;
    double pitch_d = 0.0;          // inter-element spacing, m
    int element_count = 0;         // N' = base_n + 4 * winglet_rows * sqrt(base_n)
    int base_n = 0;                // N, perfect square
    int winglet_rows = 0;
    double panel_area_m2 = 0.0;    // defaults to ((sqrt(N)-1)*d)^2, config may override
    double element_peak_gain = 0.0;    // Gamma, linear power ratio
    double element_exponent_q = 0.0;   // (Gamma - 2) / 4

    /// Edge-to-edge side of the base square grid, (sqrt(N)-1)*d.
    double side_length() const;
    /// Full extent including winglets, used for the non-overlap check.
    double bounding_extent() const;
};

enum class LayoutKind { SquareGrid, Quincunx, Explicit };

/// Satellite centers plus the panel replicated on each of them.
/// Element n of satellite s sits at satellite_centers[s] + element_offsets[n].
struct FoAGeometry {
    std::vector<Vec3> satellite_centers;
    ArrayGeometry array;
    double spacing_delta = 0.0;    // m, nominal center-to-center spacing
    LayoutKind layout = LayoutKind::SquareGrid;

    int satellite_count() const { return static_cast<int>(satellite_centers.size()); }
    long total_elements() const {
        return static_cast<long>(satellite_centers.size()) * array.element_count;
    }
    Vec3 element_position(int s, int n) const;
    std::vector<Vec3> all_positions() const;
    std::string describe() const;
};

/// q exponent of the cos^q element pattern for a linear peak gain Gamma.
double element_exponent(double gamma_linear);

ArrayGeometry build_square_array(int n, double pitch_d, double gamma_linear);

/// Base square grid plus four winglets of rows x sqrt(N) elements, one per
/// side, first winglet row at distance d beyond the outermost base row.
ArrayGeometry build_winglet_array(int n, double pitch_d, int rows, double gamma_linear);

FoAGeometry build_foa_grid(int s, double delta, const ArrayGeometry& array);

/// Five satellites: one at the origin and one at distance delta along each
/// of +y, -y, +z, -z. Set diagonal=true for the (+-delta, +-delta)/sqrt(2)
/// variant.
FoAGeometry build_foa_quincunx(double delta, const ArrayGeometry& array, bool diagonal = false);

FoAGeometry build_foa_explicit(std::vector<Vec3> centers, const ArrayGeometry& array,
                               double nominal_delta);

/// Grating-lobe-free element spacing bound d/lambda = 1/(2 sin(theta_bar)).
double max_element_spacing(double theta_bar_deg);

/// CSV with columns satellite_index,element_index,x_m,y_m,z_m.
void export_geometry_csv(const FoAGeometry& foa, const std::string& path);

/// FNV-1a hash over the canonical geometry description.
std::uint64_t geometry_hash(const FoAGeometry& foa);

}  // namespace foasim
