// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "foasim/scenario.hpp"

namespace py = pybind11;
using namespace foasim;

PYBIND11_MODULE(foasim, m) {
    m.doc() = "formation-of-arrays antenna and multi-beam network simulator";

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z);

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def_readonly("pitch_d", &ArrayGeometry::pitch_d)
        .def_readonly("element_count", &ArrayGeometry::element_count)
        .def_readonly("base_n", &ArrayGeometry::base_n)
        .def_readonly("winglet_rows", &ArrayGeometry::winglet_rows)
        .def_readonly("panel_area_m2", &ArrayGeometry::panel_area_m2)
        .def_readonly("element_peak_gain", &ArrayGeometry::element_peak_gain)
        .def_readonly("element_exponent_q", &ArrayGeometry::element_exponent_q)
        .def_property_readonly("element_offsets",
                               [](const ArrayGeometry& a) {
                                   std::vector<std::tuple<double, double, double>> out;
                                   for (const Vec3& v : a.element_offsets)
                                       out.emplace_back(v.x, v.y, v.z);
                                   return out;
                               })
        .def("side_length", &ArrayGeometry::side_length);

    py::class_<FoAGeometry>(m, "FoAGeometry")
        .def_readonly("array", &FoAGeometry::array)
        .def_readonly("spacing_delta", &FoAGeometry::spacing_delta)
        .def("satellite_count", &FoAGeometry::satellite_count)
        .def("total_elements", &FoAGeometry::total_elements)
        .def_property_readonly("satellite_centers", [](const FoAGeometry& f) {
            std::vector<std::tuple<double, double, double>> out;
            for (const Vec3& v : f.satellite_centers) out.emplace_back(v.x, v.y, v.z);
            return out;
        });

    m.def("build_square_array", &build_square_array, py::arg("n"), py::arg("pitch_d"),
          py::arg("gamma_linear"));
    m.def("build_winglet_array", &build_winglet_array, py::arg("n"), py::arg("pitch_d"),
          py::arg("rows"), py::arg("gamma_linear"));
    m.def("build_foa_grid", &build_foa_grid, py::arg("s"), py::arg("delta"), py::arg("array"));
    m.def("build_foa_quincunx", &build_foa_quincunx, py::arg("delta"), py::arg("array"),
          py::arg("diagonal") = false);
    m.def("max_element_spacing", &max_element_spacing, py::arg("theta_bar_deg"));
    m.def("element_exponent", &element_exponent, py::arg("gamma_linear"));

    m.def("element_gain", &element_gain, py::arg("theta"), py::arg("gamma_linear"));
    m.def("pattern_direct",
          [](const FoAGeometry& foa, double phi, double theta, double lambda) {
              return pattern_direct(foa, phi, theta, lambda);
          },
          py::arg("foa"), py::arg("phi"), py::arg("theta"), py::arg("lambda_m"));
    m.def("pattern_closed_form", &pattern_closed_form, py::arg("n"), py::arg("s"), py::arg("d"),
          py::arg("delta"), py::arg("gamma_linear"), py::arg("phi"), py::arg("theta"),
          py::arg("lambda_m"));
    m.def("boresight_gain_dbi", &boresight_gain_dbi, py::arg("foa"));
    m.def("beam_radius_km", &beam_radius_km, py::arg("foa"), py::arg("h_sat_km"),
          py::arg("lambda_m"));

    m.def("coverage_angle_deg", &coverage_angle_deg, py::arg("h_sat_km"), py::arg("epsilon_deg"));
    m.def("coverage_area_km2", &coverage_area_km2, py::arg("active_beams"),
          py::arg("beam_radius_km"));

    py::class_<PhyRow>(m, "PhyRow")
        .def_readonly("required_sinr_db", &PhyRow::required_sinr_db)
        .def_readonly("spectral_efficiency", &PhyRow::spectral_efficiency);
    m.def("phy_select",
          [](double eff_sinr_db, double slack_db) -> std::optional<PhyRow> {
              return phy_select(eff_sinr_db, default_phy_table(), slack_db);
          },
          py::arg("effective_sinr_db"), py::arg("slack_db") = 0.0);
    m.def("beam_throughput_mbps", &beam_throughput_mbps, py::arg("eta"), py::arg("bandwidth_hz"),
          py::arg("reuse_m"), py::arg("bw_efficiency"));

    py::class_<FeedNetSpec>(m, "FeedNetSpec")
        .def(py::init<>())
        .def_readwrite("beams_k", &FeedNetSpec::beams_k)
        .def_readwrite("colors_c", &FeedNetSpec::colors_c)
        .def_readwrite("elements_n", &FeedNetSpec::elements_n)
        .def_readwrite("satellites_s", &FeedNetSpec::satellites_s)
        .def_readwrite("bandwidth_per_beam_hz", &FeedNetSpec::bandwidth_per_beam_hz)
        .def_readwrite("adc_bits", &FeedNetSpec::adc_bits)
        .def_readwrite("samples_per_bandwidth", &FeedNetSpec::samples_per_bandwidth)
        .def_readwrite("wdm_channel_capacity_ghz", &FeedNetSpec::wdm_channel_capacity_ghz)
        .def_readwrite("feeder_rf_bandwidth_ghz", &FeedNetSpec::feeder_rf_bandwidth_ghz)
        .def_readwrite("feeder_polarizations", &FeedNetSpec::feeder_polarizations);
    m.def("isl_throughput_gbps", &isl_throughput_gbps, py::arg("spec"));
    m.def("wdm_count", &wdm_count, py::arg("occupied_bandwidth_ghz"),
          py::arg("channel_capacity_ghz"));
    m.def("gateway_count", &gateway_count, py::arg("spec"));
    m.def("aggregate_isl_bandwidth_ghz", &aggregate_isl_bandwidth_ghz, py::arg("spec"));

    py::class_<CaseSelector>(m, "CaseSelector").def(py::init<>());

    py::class_<ScenarioCaseResult>(m, "ScenarioCaseResult")
        .def_readonly("traffic", &ScenarioCaseResult::traffic)
        .def_readonly("channel", &ScenarioCaseResult::channel)
        .def_readonly("eirp_per_beam_dbw", &ScenarioCaseResult::eirp_per_beam_dbw)
        .def_readonly("los_snr_db", &ScenarioCaseResult::los_snr_db)
        .def_readonly("sir_db", &ScenarioCaseResult::sir_db)
        .def_readonly("total_sinr_db", &ScenarioCaseResult::total_sinr_db)
        .def_readonly("spectral_efficiency", &ScenarioCaseResult::spectral_efficiency)
        .def_readonly("required_phy_sinr_db", &ScenarioCaseResult::required_phy_sinr_db)
        .def_readonly("beam_radius_km", &ScenarioCaseResult::beam_radius_km)
        .def_readonly("beam_throughput_mbps", &ScenarioCaseResult::beam_throughput_mbps)
        .def_readonly("active_beams", &ScenarioCaseResult::active_beams)
        .def_readonly("aggregate_throughput_mbps", &ScenarioCaseResult::aggregate_throughput_mbps)
        .def_readonly("coverage_area_km2", &ScenarioCaseResult::coverage_area_km2)
        .def_readonly("area_throughput_mbps_km2", &ScenarioCaseResult::area_throughput_mbps_km2);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("name", &ScenarioConfig::name)
        .def_readwrite("h_sat_km", &ScenarioConfig::h_sat_km)
        .def_readwrite("elevation_deg", &ScenarioConfig::elevation_deg)
        .def_readwrite("elements_n", &ScenarioConfig::elements_n)
        .def_readwrite("d_over_lambda", &ScenarioConfig::d_over_lambda)
        .def_readwrite("satellites_s", &ScenarioConfig::satellites_s)
        .def_readwrite("element_gain_dbi", &ScenarioConfig::element_gain_dbi)
        .def_readwrite("rf_power_per_satellite_w", &ScenarioConfig::rf_power_per_satellite_w)
        .def("wavelength_m", &ScenarioConfig::wavelength_m)
        .def("build_formation", &ScenarioConfig::build_formation);

    m.def("load_config", &load_config, py::arg("path_or_preset"));
    m.def("preset_names", &preset_names);
    m.def("run_case",
          [](const ScenarioConfig& cfg, const std::string& traffic, const std::string& channel) {
              CaseSelector sel;
              sel.traffic = traffic == "T2" ? TrafficModel::T2 : TrafficModel::T1;
              sel.channel = channel == "C2" ? ChannelCondition::C2 : ChannelCondition::C1;
              return run_throughput_procedure(cfg, sel);
          },
          py::arg("config"), py::arg("traffic"), py::arg("channel"));

    py::register_exception<ScenarioError>(m, "ScenarioError");
}
