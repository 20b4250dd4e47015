// SPDX-License-Identifier: Apache-2.0
#include "foasim/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace foasim {

namespace {

int exact_isqrt(int n) {
    if (n < 1) return -1;
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    for (int c = r - 1; c <= r + 1; ++c) {
        if (c >= 0 && c * c == n) return c;
    }
    return -1;
}

}  // namespace

double ArrayGeometry::side_length() const {
    int m = exact_isqrt(base_n);
    return (m - 1) * pitch_d;
}

double ArrayGeometry::bounding_extent() const {
    return side_length() + 2.0 * winglet_rows * pitch_d;
}

Vec3 FoAGeometry::element_position(int s, int n) const {
    const Vec3& c = satellite_centers[s];
    const Vec3& o = array.element_offsets[n];
    return {c.x + o.x, c.y + o.y, c.z + o.z};
}

std::vector<Vec3> FoAGeometry::all_positions() const {
    std::vector<Vec3> out;
    out.reserve(total_elements());
    for (const Vec3& c : satellite_centers) {
        for (const Vec3& o : array.element_offsets) {
            out.push_back({c.x + o.x, c.y + o.y, c.z + o.z});
        }
    }
    return out;
}

std::string FoAGeometry::describe() const {
    char buf[256];
    const char* kind = layout == LayoutKind::SquareGrid ? "square-grid"
                     : layout == LayoutKind::Quincunx   ? "quincunx"
                                                        : "explicit";
    std::snprintf(buf, sizeof(buf), "%s S=%d N=%d rows=%d d=%.9e delta=%.9e gamma=%.9e",
                  kind, satellite_count(), array.base_n, array.winglet_rows, array.pitch_d,
                  spacing_delta, array.element_peak_gain);
    return buf;
}

double element_exponent(double gamma_linear) {
    if (gamma_linear <= 2.0) {
        throw std::invalid_argument("element gain must exceed 2 (linear) for a positive exponent");
    }
    return (gamma_linear - 2.0) / 4.0;
}

ArrayGeometry build_square_array(int n, double pitch_d, double gamma_linear) {
    int m = exact_isqrt(n);
    if (m < 1) throw std::invalid_argument("element count N must be a perfect square >= 1");
    if (!(pitch_d > 0.0)) throw std::invalid_argument("element pitch d must be positive");

    ArrayGeometry g;
    g.pitch_d = pitch_d;
    g.base_n = n;
    g.element_count = n;
    g.winglet_rows = 0;
    g.element_peak_gain = gamma_linear;
    g.element_exponent_q = element_exponent(gamma_linear);

    g.element_offsets.reserve(n);
    const double half = (m - 1) / 2.0;
    for (int k = 0; k < n; ++k) {
        double y = pitch_d * (-half + (k % m));
        double z = pitch_d * (-half + (k / m));
        g.element_offsets.push_back({0.0, y, z});
    }
    double side = (m - 1) * pitch_d;
    g.panel_area_m2 = side * side;
    return g;
}

ArrayGeometry build_winglet_array(int n, double pitch_d, int rows, double gamma_linear) {
    int m = exact_isqrt(n);
    if (m < 1) throw std::invalid_argument("element count N must be a perfect square >= 1");
    if (rows < 0 || 2 * rows > m - 1) {
        throw std::invalid_argument("winglet rows exceed the foldability bound (sqrt(N)-1)/2");
    }
    ArrayGeometry g = build_square_array(n, pitch_d, gamma_linear);
    if (rows == 0) return g;

    g.winglet_rows = rows;
    g.element_count = n + 4 * rows * m;
    const double half = (m - 1) / 2.0 * pitch_d;
    for (int r = 1; r <= rows; ++r) {
        double off = half + r * pitch_d;
        for (int k = 0; k < m; ++k) {
            double t = pitch_d * (-(m - 1) / 2.0 + k);
            g.element_offsets.push_back({0.0, t, +off});   // top
            g.element_offsets.push_back({0.0, t, -off});   // bottom
            g.element_offsets.push_back({0.0, +off, t});   // right
            g.element_offsets.push_back({0.0, -off, t});   // left
        }
    }
    // Winglet strips add rows * sqrt(N) * d^2 of panel each.
    g.panel_area_m2 += 4.0 * rows * m * pitch_d * pitch_d;
    return g;
}

FoAGeometry build_foa_grid(int s, double delta, const ArrayGeometry& array) {
    int m = exact_isqrt(s);
    if (m < 1) throw std::invalid_argument("satellite count S must be a perfect square >= 1");
    if (s > 1 && delta < array.bounding_extent()) {
        throw std::invalid_argument("satellite spacing smaller than the panel extent: panels overlap");
    }
    FoAGeometry foa;
    foa.array = array;
    foa.spacing_delta = delta;
    foa.layout = LayoutKind::SquareGrid;
    foa.satellite_centers.reserve(s);
    const double half = (m - 1) / 2.0;
    for (int k = 0; k < s; ++k) {
        double y = delta * (-half + (k % m));
        double z = delta * (-half + (k / m));
        foa.satellite_centers.push_back({0.0, y, z});
    }
    return foa;
}

FoAGeometry build_foa_quincunx(double delta, const ArrayGeometry& array, bool diagonal) {
    if (delta < array.bounding_extent()) {
        throw std::invalid_argument("satellite spacing smaller than the panel extent: panels overlap");
    }
    FoAGeometry foa;
    foa.array = array;
    foa.spacing_delta = delta;
    foa.layout = LayoutKind::Quincunx;
    foa.satellite_centers.push_back({0.0, 0.0, 0.0});
    if (diagonal) {
        double a = delta / std::numbers::sqrt2;
        foa.satellite_centers.push_back({0.0, +a, +a});
        foa.satellite_centers.push_back({0.0, +a, -a});
        foa.satellite_centers.push_back({0.0, -a, +a});
        foa.satellite_centers.push_back({0.0, -a, -a});
    } else {
        foa.satellite_centers.push_back({0.0, +delta, 0.0});
        foa.satellite_centers.push_back({0.0, -delta, 0.0});
        foa.satellite_centers.push_back({0.0, 0.0, +delta});
        foa.satellite_centers.push_back({0.0, 0.0, -delta});
    }
    return foa;
}

FoAGeometry build_foa_explicit(std::vector<Vec3> centers, const ArrayGeometry& array,
                               double nominal_delta) {
    if (centers.empty()) throw std::invalid_argument("explicit layout needs at least one center");
    FoAGeometry foa;
    foa.array = array;
    foa.spacing_delta = nominal_delta;
    foa.layout = LayoutKind::Explicit;
    foa.satellite_centers = std::move(centers);
    return foa;
}

double max_element_spacing(double theta_bar_deg) {
    if (!(theta_bar_deg > 0.0) || !(theta_bar_deg < 90.0)) {
        throw std::invalid_argument("coverage angle must lie in (0, 90) degrees");
    }
    double t = theta_bar_deg * std::numbers::pi / 180.0;
    return 1.0 / (2.0 * std::sin(t));
}

void export_geometry_csv(const FoAGeometry& foa, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "satellite_index,element_index,x_m,y_m,z_m\n";
    char line[160];
    for (int s = 0; s < foa.satellite_count(); ++s) {
        for (int n = 0; n < foa.array.element_count; ++n) {
            Vec3 p = foa.element_position(s, n);
            std::snprintf(line, sizeof(line), "%d,%d,%.9f,%.9f,%.9f\n", s, n, p.x, p.y, p.z);
            out << line;
        }
    }
}

std::uint64_t geometry_hash(const FoAGeometry& foa) {
    std::string desc = foa.describe();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : desc) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace foasim
