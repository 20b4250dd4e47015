// SPDX-License-Identifier: Apache-2.0
#include "foasim/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace foasim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPiDeg = 90.0;

double deg2rad(double d) { return d * kPi / 180.0; }

// 53-bit uniform in [0,1) from a splitmix-style generator; fixed mapping so
// seeded draws replay identically on every platform.
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

}  // namespace

Vec3 wave_vector(double phi, double theta, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("wavelength must be positive");
    double k = 2.0 * kPi / lambda;
    return {k * std::cos(theta) * std::cos(phi), k * std::cos(theta) * std::sin(phi),
            k * std::sin(theta)};
}

double element_gain(double theta, double gamma_linear) {
    double q = element_exponent(gamma_linear);
    if (std::abs(theta) >= deg2rad(kHalfPiDeg)) return 0.0;  // back hemisphere
    return std::sqrt(gamma_linear) * std::pow(std::cos(theta), q);
}

ResponseVector response_vector(const FoAGeometry& foa, double phi, double theta, double lambda) {
    ResponseVector rv;
    rv.phi = phi;
    rv.theta = theta;
    rv.lambda = lambda;
    rv.entries.reserve(foa.total_elements());
    Vec3 k = wave_vector(phi, theta, lambda);
    double g = element_gain(theta, foa.array.element_peak_gain);
    for (const Vec3& c : foa.satellite_centers) {
        for (const Vec3& o : foa.array.element_offsets) {
            double phase = k.x * (c.x + o.x) + k.y * (c.y + o.y) + k.z * (c.z + o.z);
            rv.entries.push_back(std::polar(g, phase));
        }
    }
    return rv;
}

PhaseErrorSet sample_phase_errors(double phi_bar_rad, int s, std::uint64_t seed) {
    if (phi_bar_rad < 0.0) throw std::invalid_argument("phase bound must be non-negative");
    PhaseErrorSet set;
    set.bound = phi_bar_rad;
    set.seed = seed;
    set.phi_s.resize(s);
    SplitMix64 rng(seed);
    for (int i = 0; i < s; ++i) {
        set.phi_s[i] = phi_bar_rad * (2.0 * rng.uniform01() - 1.0);
    }
    return set;
}

double pattern_direct(const FoAGeometry& foa, double phi, double theta, double lambda,
                      const PhaseErrorSet* errors) {
    if (foa.total_elements() < 1) throw std::invalid_argument("geometry has no elements");
    if (errors && static_cast<int>(errors->phi_s.size()) != foa.satellite_count()) {
        throw std::invalid_argument("phase error set size does not match satellite count");
    }
    Vec3 k = wave_vector(phi, theta, lambda);
    std::complex<double> acc{0.0, 0.0};
    for (int s = 0; s < foa.satellite_count(); ++s) {
        const Vec3& c = foa.satellite_centers[s];
        std::complex<double> sat{0.0, 0.0};
        for (const Vec3& o : foa.array.element_offsets) {
            double phase = k.y * (c.y + o.y) + k.z * (c.z + o.z);
            sat += std::polar(1.0, phase);
        }
        if (errors) sat *= std::polar(1.0, errors->phi_s[s]);
        acc += sat;
    }
    double g = element_gain(theta, foa.array.element_peak_gain);
    double amp = g * std::abs(acc);
    return amp * amp / static_cast<double>(foa.total_elements());
}

double dirichlet_ratio(int m, double t) {
    double den = std::sin(kPi * t);
    if (std::abs(den) < 1e-12) {
        long k = std::lround(t);
        bool flip = ((m - 1) % 2 != 0) && (k % 2 != 0);
        return flip ? -static_cast<double>(m) : static_cast<double>(m);
    }
    return std::sin(kPi * m * t) / den;
}

double pattern_closed_form(int n, int s, double d, double delta, double gamma_linear,
                           double phi, double theta, double lambda) {
    int mn = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    int ms = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s))));
    if (mn * mn != n || ms * ms != s) {
        throw std::invalid_argument("closed form needs perfect-square element and satellite counts");
    }
    double omega = std::sin(theta);
    double psi = std::cos(theta) * std::sin(phi);
    double foa_factor = dirichlet_ratio(ms, omega * delta / lambda) *
                        dirichlet_ratio(ms, psi * delta / lambda);
    double array_factor = dirichlet_ratio(mn, omega * d / lambda) *
                          dirichlet_ratio(mn, psi * d / lambda);
    double g = element_gain(theta, gamma_linear);
    double amp = g / std::sqrt(static_cast<double>(n) * s) * foa_factor * array_factor;
    return amp * amp * n * s;  // normalize so boresight equals Gamma*N*S
}

double boresight_gain_dbi(const FoAGeometry& foa) {
    double zeta0 = foa.array.element_peak_gain * foa.array.element_count * foa.satellite_count();
    return 10.0 * std::log10(zeta0);
}

ResponseKernel::ResponseKernel(const FoAGeometry& foa, double lambda)
    : foa_(&foa), lambda_(lambda) {
    int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(foa.array.base_n))));
    sqrt_n_ = (m * m == foa.array.base_n) ? m : 0;
    if (foa.layout == LayoutKind::SquareGrid) {
        int q = static_cast<int>(std::lround(std::sqrt(static_cast<double>(foa.satellite_count()))));
        sqrt_s_ = (q * q == foa.satellite_count()) ? q : 0;
    }
}

void ResponseKernel::set_phase_errors(const PhaseErrorSet* errors) {
    if (errors && static_cast<int>(errors->phi_s.size()) != foa_->satellite_count()) {
        throw std::invalid_argument("phase error set size does not match satellite count");
    }
    errors_ = errors;
}

double ResponseKernel::panel_sum(double uy, double uz) const {
    const ArrayGeometry& arr = foa_->array;
    if (sqrt_n_ > 0) {
        double d = arr.pitch_d;
        double panel = dirichlet_ratio(sqrt_n_, uy * d) * dirichlet_ratio(sqrt_n_, uz * d);
        if (arr.winglet_rows > 0) {
            double half = (sqrt_n_ - 1) / 2.0 * d;
            double wy = 0.0, wz = 0.0;
            for (int r = 1; r <= arr.winglet_rows; ++r) {
                double off = half + r * d;
                wz += 2.0 * std::cos(2.0 * kPi * uz * off);
                wy += 2.0 * std::cos(2.0 * kPi * uy * off);
            }
            panel += dirichlet_ratio(sqrt_n_, uy * d) * wz + dirichlet_ratio(sqrt_n_, uz * d) * wy;
        }
        return panel;
    }
    std::complex<double> acc{0.0, 0.0};
    for (const Vec3& o : arr.element_offsets) {
        acc += std::polar(1.0, 2.0 * kPi * (uy * o.y + uz * o.z));
    }
    return acc.real();
}

// Sum of exp(j 2 pi (uy*y + uz*z)) over all element positions, where
// (uy, uz) are direction differences in cycles per meter. Every supported
// layout is mirror-symmetric so the sum is real unless phase errors are set.
double ResponseKernel::lattice_sum(double uy, double uz) const {
    double panel = panel_sum(uy, uz);

    if (errors_) {
        std::complex<double> acc{0.0, 0.0};
        for (int s = 0; s < foa_->satellite_count(); ++s) {
            const Vec3& c = foa_->satellite_centers[s];
            double phase = 2.0 * kPi * (uy * c.y + uz * c.z) + errors_->phi_s[s];
            acc += std::polar(1.0, phase);
        }
        return panel * std::abs(acc);
    }

    double centers;
    if (sqrt_s_ > 0) {
        centers = dirichlet_ratio(sqrt_s_, uy * foa_->spacing_delta) *
                  dirichlet_ratio(sqrt_s_, uz * foa_->spacing_delta);
    } else {
        std::complex<double> acc{0.0, 0.0};
        for (const Vec3& c : foa_->satellite_centers) {
            acc += std::polar(1.0, 2.0 * kPi * (uy * c.y + uz * c.z));
        }
        centers = acc.real();
    }
    return panel * centers;
}

double ResponseKernel::cross_magnitude(double phi1, double theta1, double phi2,
                                       double theta2) const {
    double g1 = element_gain(theta1, foa_->array.element_peak_gain);
    double g2 = element_gain(theta2, foa_->array.element_peak_gain);
    double uy = (std::cos(theta2) * std::sin(phi2) - std::cos(theta1) * std::sin(phi1)) / lambda_;
    double uz = (std::sin(theta2) - std::sin(theta1)) / lambda_;
    return g1 * g2 * std::abs(lattice_sum(uy, uz));
}

double ResponseKernel::norm_squared(double phi, double theta) const {
    (void)phi;
    double g = element_gain(theta, foa_->array.element_peak_gain);
    return g * g * static_cast<double>(foa_->total_elements());
}

PatternGrid make_pattern_grid(const FoAGeometry& foa, double lambda, double extent_deg,
                              int resolution, const PhaseErrorSet* errors) {
    if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
    PatternGrid grid;
    grid.lambda = lambda;
    grid.geometry_hash = geometry_hash(foa);
    grid.boresight_dbi = boresight_gain_dbi(foa);
    grid.phi_deg.resize(resolution);
    grid.theta_deg.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        double v = -extent_deg + 2.0 * extent_deg * i / (resolution - 1);
        grid.phi_deg[i] = v;
        grid.theta_deg[i] = v;
    }
    grid.gain_dbi.resize(static_cast<size_t>(resolution) * resolution);

    const double total = static_cast<double>(foa.total_elements());
    ResponseKernel kernel(foa, lambda);
    const bool fast = errors == nullptr;
    for (int it = 0; it < resolution; ++it) {
        double theta = deg2rad(grid.theta_deg[it]);
        for (int ip = 0; ip < resolution; ++ip) {
            double phi = deg2rad(grid.phi_deg[ip]);
            double zeta;
            if (fast) {
                // cross = g0 * g(theta) * |sum|, so zeta = (cross/g0)^2 / total
                double cross = kernel.cross_magnitude(0.0, 0.0, phi, theta);
                double g0 = element_gain(0.0, foa.array.element_peak_gain);
                zeta = (cross / g0) * (cross / g0) / total;
            } else {
                zeta = pattern_direct(foa, phi, theta, lambda, errors);
            }
            grid.gain_dbi[static_cast<size_t>(it) * resolution + ip] =
                zeta > 0.0 ? 10.0 * std::log10(zeta) : -400.0;
        }
    }
    return grid;
}

void export_pattern_csv(const PatternGrid& grid, const std::string& csv_path,
                        const std::string& sidecar_json_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path + " for writing");
    out << "phi_deg,theta_deg,gain_dBi\n";
    char line[96];
    for (size_t it = 0; it < grid.theta_deg.size(); ++it) {
        for (size_t ip = 0; ip < grid.phi_deg.size(); ++ip) {
            std::snprintf(line, sizeof(line), "%.6f,%.6f,%.4f\n", grid.phi_deg[ip],
                          grid.theta_deg[it], grid.gain_dbi[it * grid.phi_deg.size() + ip]);
            out << line;
        }
    }
    std::ofstream side(sidecar_json_path);
    if (!side) throw std::runtime_error("cannot open " + sidecar_json_path + " for writing");
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\n  \"geometry_hash\": \"%016llx\",\n  \"lambda_m\": %.9f,\n"
                  "  \"boresight_dbi\": %.4f\n}\n",
                  static_cast<unsigned long long>(grid.geometry_hash), grid.lambda,
                  grid.boresight_dbi);
    side << buf;
}

GratingLobeReport grating_lobe_report(const PatternGrid& grid, double mainlobe_exclusion_deg) {
    GratingLobeReport rep;
    double best = -1e300;
    bool found = false;
    for (size_t it = 0; it < grid.theta_deg.size(); ++it) {
        for (size_t ip = 0; ip < grid.phi_deg.size(); ++ip) {
            double p = grid.phi_deg[ip];
            double t = grid.theta_deg[it];
            if (std::hypot(p, t) <= mainlobe_exclusion_deg) continue;
            double v = grid.gain_dbi[it * grid.phi_deg.size() + ip];
            if (v > best) {
                best = v;
                rep.phi_deg = p;
                rep.theta_deg = t;
                found = true;
            }
        }
    }
    if (!found) throw std::invalid_argument("main-lobe exclusion covers the whole grid");
    rep.level_db_below_boresight = grid.boresight_dbi - best;
    return rep;
}

double beam_radius_km(const FoAGeometry& foa, double h_sat_km, double lambda) {
    if (!(h_sat_km > 0.0)) throw std::invalid_argument("satellite height must be positive");
    ResponseKernel kernel(foa, lambda);
    const double total = static_cast<double>(foa.total_elements());
    const double g0 = element_gain(0.0, foa.array.element_peak_gain);
    auto zeta = [&](double phi) {
        double cross = kernel.cross_magnitude(0.0, 0.0, phi, 0.0);
        return (cross / g0) * (cross / g0) / total;
    };
    const double zeta0 = zeta(0.0);
    const double half = zeta0 / 2.0;

    // Aperture extent across y sets the scan step to the first null.
    double ymin = 0.0, ymax = 0.0;
    for (const Vec3& c : foa.satellite_centers) {
        ymin = std::min(ymin, c.y);
        ymax = std::max(ymax, c.y);
    }
    double aperture = (ymax - ymin) + foa.array.bounding_extent();
    double step = lambda / (100.0 * aperture);

    double lo = 0.0, hi = -1.0, prev = zeta0;
    const double scan_limit = kPi / 2.0;
    for (double phi = step; phi < scan_limit; phi += step) {
        double v = zeta(phi);
        if (prev >= half && v < half) {
            lo = phi - step;
            hi = phi;
            break;
        }
        prev = v;
    }
    if (hi < 0.0) throw std::runtime_error("no half-power crossing inside the scan range");

    for (int i = 0; i < 200 && (hi - lo) > 1e-10; ++i) {
        double mid = 0.5 * (lo + hi);
        (zeta(mid) >= half ? lo : hi) = mid;
    }
    double phi3 = 0.5 * (lo + hi);
    return h_sat_km * std::tan(phi3);
}

}  // namespace foasim
