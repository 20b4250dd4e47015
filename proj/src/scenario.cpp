// SPDX-License-Identifier: Apache-2.0
#include "foasim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace foasim {

namespace {

constexpr double kLightSpeed = 299792458.0;

using nlohmann::json;

[[noreturn]] void fail_field(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config field '" + path + "': " + what);
}

double get_number(const json& j, const std::string& path, double lo, double hi) {
    if (!j.is_number()) fail_field(path, "expected a number");
    double v = j.get<double>();
    if (v < lo || v > hi) {
        std::ostringstream os;
        os << "value " << v << " outside [" << lo << ", " << hi << "]";
        fail_field(path, os.str());
    }
    return v;
}

int get_int(const json& j, const std::string& path, int lo, int hi) {
    if (!j.is_number_integer()) fail_field(path, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v > hi) fail_field(path, "integer out of range");
    return static_cast<int>(v);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail_field(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

}  // namespace

double ScenarioConfig::wavelength_m() const { return kLightSpeed / f0_hz; }

double ScenarioConfig::derived_delta_m() const {
    if (delta_m > 0.0) return delta_m;
    double d = d_over_lambda * wavelength_m();
    int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(elements_n))));
    double side = (m - 1) * d;
    if (winglet_rows > 0) {
        // fold-out clearance: winglet tips keep the nominal panel gap plus
        // one hinge pitch per side
        return delta_over_l * side + 2.0 * (winglet_rows + 1) * d;
    }
    return delta_over_l * side;
}

ArrayGeometry ScenarioConfig::build_array() const {
    double d = d_over_lambda * wavelength_m();
    double gamma = std::pow(10.0, element_gain_dbi / 10.0);
    ArrayGeometry arr = winglet_rows > 0 ? build_winglet_array(elements_n, d, winglet_rows, gamma)
                                         : build_square_array(elements_n, d, gamma);
    if (panel_area_m2 > 0.0) arr.panel_area_m2 = panel_area_m2;
    return arr;
}

FoAGeometry ScenarioConfig::build_formation() const {
    ArrayGeometry arr = build_array();
    double delta = derived_delta_m();
    if (layout == "square-grid") return build_foa_grid(satellites_s, delta, arr);
    if (layout == "quincunx" || layout == "quincunx-diagonal") {
        if (satellites_s != 5) fail_field("foa.S", "quincunx layout needs exactly 5 satellites");
        return build_foa_quincunx(delta, arr, layout == "quincunx-diagonal");
    }
    fail_field("foa.layout", "expected square-grid, quincunx or quincunx-diagonal");
}

std::string config_to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["orbit"] = {{"h_sat_km", c.h_sat_km}, {"elevation_deg", c.elevation_deg}};
    j["frequency"] = {{"f0_hz", c.f0_hz},
                      {"bandwidth_hz", c.bandwidth_hz},
                      {"reuse_m_t1", c.reuse_m_t1},
                      {"sinr_bandwidth_hz", c.sinr_bandwidth_hz}};
    j["foa"] = {{"N", c.elements_n},
                {"d_over_lambda", c.d_over_lambda},
                {"S", c.satellites_s},
                {"delta_over_L", c.delta_over_l},
                {"delta_m", c.delta_m},
                {"layout", c.layout},
                {"winglet_rows", c.winglet_rows},
                {"element_gain_dbi", c.element_gain_dbi},
                {"panel_area_m2", c.panel_area_m2}};
    j["power"] = {{"solar_dc_per_m2_w", c.solar_dc_per_m2_w},
                  {"tx_platform_dc_ratio", c.tx_platform_dc_ratio},
                  {"dc_to_rf_efficiency", c.dc_to_rf_efficiency},
                  {"output_backoff_db", c.output_backoff_db},
                  {"antenna_losses_db", c.antenna_losses_db},
                  {"rf_power_per_satellite_w", c.rf_power_per_satellite_w}};
    j["losses"] = {{"atmospheric_db", c.atmospheric_db},
                   {"body_db", c.body_db},
                   {"fading_margin_db", c.fading_margin_db},
                   {"shadowing_db", c.shadowing_db},
                   {"demod_loss_db", c.demod_loss_db},
                   {"g_over_t_db", c.g_over_t_db}};
    json cases = json::array();
    for (const CaseSelector& s : c.cases) {
        cases.push_back({{"traffic", s.traffic == TrafficModel::T1 ? "T1" : "T2"},
                         {"channel", s.channel == ChannelCondition::C1 ? "C1" : "C2"}});
    }
    j["cases"] = cases;
    j["evaluation"] = {{"target_beam_rate_mbps", c.target_beam_rate_mbps},
                       {"bandwidth_efficiency", c.bandwidth_efficiency},
                       {"user_placement", c.user_placement},
                       {"user_seed", c.user_seed}};
    j["monte_carlo"] = {{"phi_bar_deg", c.phi_bar_deg},
                        {"replications", c.replications},
                        {"seed", c.seed}};
    j["grid"] = {{"resolution", c.grid_resolution}};
    return j.dump(2) + "\n";
}

ScenarioConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be an object");
    check_keys(j, "", {"name", "orbit", "frequency", "foa", "power", "losses", "cases",
                       "evaluation", "monte_carlo", "grid"});
    ScenarioConfig c;
    if (!j.contains("name") || !j["name"].is_string()) fail_field("name", "missing or not a string");
    c.name = j["name"].get<std::string>();

    if (!j.contains("orbit")) fail_field("orbit", "missing section");
    const json& orbit = j["orbit"];
    check_keys(orbit, "orbit", {"h_sat_km", "elevation_deg"});
    if (!orbit.contains("h_sat_km")) fail_field("orbit.h_sat_km", "missing");
    c.h_sat_km = get_number(orbit["h_sat_km"], "orbit.h_sat_km", 1.0, 1e6);
    if (!orbit.contains("elevation_deg")) fail_field("orbit.elevation_deg", "missing");
    c.elevation_deg = get_number(orbit["elevation_deg"], "orbit.elevation_deg", 0.0, 90.0);

    if (!j.contains("frequency")) fail_field("frequency", "missing section");
    const json& fr = j["frequency"];
    check_keys(fr, "frequency", {"f0_hz", "bandwidth_hz", "reuse_m_t1", "sinr_bandwidth_hz"});
    if (!fr.contains("f0_hz")) fail_field("frequency.f0_hz", "missing");
    c.f0_hz = get_number(fr["f0_hz"], "frequency.f0_hz", 1e8, 1e12);
    if (!fr.contains("bandwidth_hz")) fail_field("frequency.bandwidth_hz", "missing");
    c.bandwidth_hz = get_number(fr["bandwidth_hz"], "frequency.bandwidth_hz", 1e3, 1e10);
    if (fr.contains("reuse_m_t1")) c.reuse_m_t1 = get_int(fr["reuse_m_t1"], "frequency.reuse_m_t1", 1, 16);
    if (fr.contains("sinr_bandwidth_hz")) {
        c.sinr_bandwidth_hz = get_number(fr["sinr_bandwidth_hz"], "frequency.sinr_bandwidth_hz", 0.0, 1e10);
    }

    if (!j.contains("foa")) fail_field("foa", "missing section");
    const json& foa = j["foa"];
    check_keys(foa, "foa", {"N", "d_over_lambda", "S", "delta_over_L", "delta_m", "layout",
                            "winglet_rows", "element_gain_dbi", "panel_area_m2"});
    if (!foa.contains("N")) fail_field("foa.N", "missing");
    c.elements_n = get_int(foa["N"], "foa.N", 1, 1000000);
    if (!foa.contains("d_over_lambda")) fail_field("foa.d_over_lambda", "missing");
    c.d_over_lambda = get_number(foa["d_over_lambda"], "foa.d_over_lambda", 1e-3, 1e3);
    if (!foa.contains("S")) fail_field("foa.S", "missing");
    c.satellites_s = get_int(foa["S"], "foa.S", 1, 1000000);
    if (foa.contains("delta_over_L")) c.delta_over_l = get_number(foa["delta_over_L"], "foa.delta_over_L", 0.0, 100.0);
    if (foa.contains("delta_m")) c.delta_m = get_number(foa["delta_m"], "foa.delta_m", 0.0, 1e5);
    if (foa.contains("layout")) {
        if (!foa["layout"].is_string()) fail_field("foa.layout", "expected a string");
        c.layout = foa["layout"].get<std::string>();
    }
    if (foa.contains("winglet_rows")) c.winglet_rows = get_int(foa["winglet_rows"], "foa.winglet_rows", 0, 1000);
    if (!foa.contains("element_gain_dbi")) fail_field("foa.element_gain_dbi", "missing");
    c.element_gain_dbi = get_number(foa["element_gain_dbi"], "foa.element_gain_dbi", 3.02, 60.0);
    if (foa.contains("panel_area_m2")) c.panel_area_m2 = get_number(foa["panel_area_m2"], "foa.panel_area_m2", 0.0, 1e6);

    if (j.contains("power")) {
        const json& p = j["power"];
        check_keys(p, "power", {"solar_dc_per_m2_w", "tx_platform_dc_ratio", "dc_to_rf_efficiency",
                                "output_backoff_db", "antenna_losses_db", "rf_power_per_satellite_w"});
        if (p.contains("solar_dc_per_m2_w")) c.solar_dc_per_m2_w = get_number(p["solar_dc_per_m2_w"], "power.solar_dc_per_m2_w", 0.0, 1e5);
        if (p.contains("tx_platform_dc_ratio")) c.tx_platform_dc_ratio = get_number(p["tx_platform_dc_ratio"], "power.tx_platform_dc_ratio", 0.0, 1.0);
        if (p.contains("dc_to_rf_efficiency")) c.dc_to_rf_efficiency = get_number(p["dc_to_rf_efficiency"], "power.dc_to_rf_efficiency", 0.0, 1.0);
        if (p.contains("output_backoff_db")) c.output_backoff_db = get_number(p["output_backoff_db"], "power.output_backoff_db", 0.0, 30.0);
        if (p.contains("antenna_losses_db")) c.antenna_losses_db = get_number(p["antenna_losses_db"], "power.antenna_losses_db", 0.0, 30.0);
        if (p.contains("rf_power_per_satellite_w")) c.rf_power_per_satellite_w = get_number(p["rf_power_per_satellite_w"], "power.rf_power_per_satellite_w", 0.0, 1e7);
    }

    if (j.contains("losses")) {
        const json& l = j["losses"];
        check_keys(l, "losses", {"atmospheric_db", "body_db", "fading_margin_db", "shadowing_db",
                                 "demod_loss_db", "g_over_t_db"});
        if (l.contains("atmospheric_db")) c.atmospheric_db = get_number(l["atmospheric_db"], "losses.atmospheric_db", 0.0, 100.0);
        if (l.contains("body_db")) c.body_db = get_number(l["body_db"], "losses.body_db", 0.0, 100.0);
        if (l.contains("fading_margin_db")) c.fading_margin_db = get_number(l["fading_margin_db"], "losses.fading_margin_db", 0.0, 100.0);
        if (l.contains("shadowing_db")) c.shadowing_db = get_number(l["shadowing_db"], "losses.shadowing_db", 0.0, 100.0);
        if (l.contains("demod_loss_db")) c.demod_loss_db = get_number(l["demod_loss_db"], "losses.demod_loss_db", 0.0, 100.0);
        if (l.contains("g_over_t_db")) c.g_over_t_db = get_number(l["g_over_t_db"], "losses.g_over_t_db", -100.0, 100.0);
    }

    if (j.contains("cases")) {
        if (!j["cases"].is_array()) fail_field("cases", "expected an array");
        for (size_t i = 0; i < j["cases"].size(); ++i) {
            const json& e = j["cases"][i];
            std::string path = "cases[" + std::to_string(i) + "]";
            check_keys(e, path, {"traffic", "channel"});
            if (!e.contains("traffic") || !e.contains("channel")) fail_field(path, "needs traffic and channel");
            std::string t = e["traffic"].get<std::string>();
            std::string ch = e["channel"].get<std::string>();
            CaseSelector sel;
            if (t == "T1") sel.traffic = TrafficModel::T1;
            else if (t == "T2") sel.traffic = TrafficModel::T2;
            else fail_field(path + ".traffic", "expected T1 or T2");
            if (ch == "C1") sel.channel = ChannelCondition::C1;
            else if (ch == "C2") sel.channel = ChannelCondition::C2;
            else fail_field(path + ".channel", "expected C1 or C2");
            c.cases.push_back(sel);
        }
    }

    if (j.contains("evaluation")) {
        const json& e = j["evaluation"];
        check_keys(e, "evaluation", {"target_beam_rate_mbps", "bandwidth_efficiency",
                                     "user_placement", "user_seed"});
        if (e.contains("target_beam_rate_mbps")) c.target_beam_rate_mbps = get_number(e["target_beam_rate_mbps"], "evaluation.target_beam_rate_mbps", 0.0, 1e6);
        if (e.contains("bandwidth_efficiency")) c.bandwidth_efficiency = get_number(e["bandwidth_efficiency"], "evaluation.bandwidth_efficiency", 0.01, 1.0);
        if (e.contains("user_placement")) {
            c.user_placement = e["user_placement"].get<std::string>();
            if (c.user_placement != "beam-edge" && c.user_placement != "random") {
                fail_field("evaluation.user_placement", "expected beam-edge or random");
            }
        }
        if (e.contains("user_seed")) c.user_seed = e["user_seed"].get<std::uint64_t>();
    }

    if (j.contains("monte_carlo")) {
        const json& m = j["monte_carlo"];
        check_keys(m, "monte_carlo", {"phi_bar_deg", "replications", "seed"});
        if (m.contains("phi_bar_deg")) c.phi_bar_deg = get_number(m["phi_bar_deg"], "monte_carlo.phi_bar_deg", 0.0, 180.0);
        if (m.contains("replications")) c.replications = get_int(m["replications"], "monte_carlo.replications", 1, 1000000);
        if (m.contains("seed")) c.seed = m["seed"].get<std::uint64_t>();
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"resolution"});
        if (g.contains("resolution")) c.grid_resolution = get_int(g["resolution"], "grid.resolution", 2, 20001);
    }

    if (c.cases.empty()) {
        c.cases = {{TrafficModel::T1, ChannelCondition::C1}, {TrafficModel::T1, ChannelCondition::C2},
                   {TrafficModel::T2, ChannelCondition::C1}, {TrafficModel::T2, ChannelCondition::C2}};
    }
    int sq = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.elements_n))));
    if (sq * sq != c.elements_n) fail_field("foa.N", "must be a perfect square");
    if (c.layout == "square-grid") {
        int ss = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.satellites_s))));
        if (ss * ss != c.satellites_s) fail_field("foa.S", "must be a perfect square for the grid layout");
    }
    return c;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    std::string text = config_to_json(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

ScenarioConfig make_r_geo() {
    ScenarioConfig c;
    c.name = "r-geo";
    c.h_sat_km = 35870.0;
    c.elevation_deg = 60.0;
    c.f0_hz = 2.2e9;
    c.bandwidth_hz = 60e6;
    c.reuse_m_t1 = 3;
    c.sinr_bandwidth_hz = 20e6;
    c.elements_n = 49;
    c.d_over_lambda = 4.5;
    c.satellites_s = 1089;
    c.delta_over_l = 1.25;
    c.layout = "square-grid";
    c.element_gain_dbi = 23.0;
    c.panel_area_m2 = 13.56;
    c.tx_platform_dc_ratio = 0.40;
    c.rf_power_per_satellite_w = 239.5;
    c.cases = {{TrafficModel::T1, ChannelCondition::C1}, {TrafficModel::T1, ChannelCondition::C2},
               {TrafficModel::T2, ChannelCondition::C1}, {TrafficModel::T2, ChannelCondition::C2}};
    return c;
}

ScenarioConfig make_leo() {
    ScenarioConfig c = make_r_geo();
    c.name = "leo";
    c.h_sat_km = 550.0;
    c.elevation_deg = 40.0;
    c.elements_n = 2209;
    c.d_over_lambda = 0.6;
    c.satellites_s = 5;
    c.layout = "quincunx";
    c.element_gain_dbi = 5.55;
    c.panel_area_m2 = 14.16;
    c.tx_platform_dc_ratio = 0.25;
    c.rf_power_per_satellite_w = 156.4;
    return c;
}

ScenarioConfig make_winglet(int rows) {
    ScenarioConfig c = make_r_geo();
    c.winglet_rows = rows;
    switch (rows) {
        case 1:
            c.name = "w1";
            c.satellites_s = 729;
            c.rf_power_per_satellite_w = 424.3;
            c.panel_area_m2 = 20.33;
            break;
        case 2:
            c.name = "w2";
            c.satellites_s = 529;
            c.rf_power_per_satellite_w = 544.0;
            c.panel_area_m2 = 27.11;
            break;
        case 3:
            c.name = "w3";
            c.satellites_s = 441;
            c.rf_power_per_satellite_w = 663.8;
            c.panel_area_m2 = 33.89;
            break;
        default:
            throw std::invalid_argument("winglet preset rows must be 1, 2 or 3");
    }
    c.cases = {{TrafficModel::T2, ChannelCondition::C1}};
    return c;
}

ScenarioConfig make_geo_fig_sweep() {
    ScenarioConfig c = make_r_geo();
    c.name = "geo-awgn";
    c.satellites_s = 49;
    c.body_db = 0.0;
    c.shadowing_db = 0.0;
    c.fading_margin_db = 0.0;
    c.cases = {{TrafficModel::T1, ChannelCondition::C2}};
    return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"r-geo", "leo", "w1", "w2", "w3", "geo-awgn"}; }

ScenarioConfig preset_config(const std::string& name) {
    if (name == "r-geo") return make_r_geo();
    if (name == "leo") return make_leo();
    if (name == "w1") return make_winglet(1);
    if (name == "w2") return make_winglet(2);
    if (name == "w3") return make_winglet(3);
    if (name == "geo-awgn") return make_geo_fig_sweep();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

ScenarioConfig load_config(const std::string& path_or_preset) {
    for (const std::string& p : preset_names()) {
        if (p == path_or_preset) return preset_config(p);
    }
    std::ifstream in(path_or_preset);
    if (!in) throw std::invalid_argument("config file not found: " + path_or_preset);
    std::ostringstream os;
    os << in.rdbuf();
    return config_from_json_text(os.str());
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = {
        {"r-geo", "T1", "C1", 2.0, 0.59, -2.0, 10.7, 6777, 72700, 3563449, 2.04e-2, 14.2},
        {"r-geo", "T1", "C2", 2.5, 0.59, -2.0, 10.7, 12479, 133870, 6561647, 2.04e-2, 14.2},
        {"r-geo", "T2", "C1", 4.1, 0.82, 0.0, 44.7, 5417, 242290, 2848341, 8.51e-2, 14.2},
        {"r-geo", "T2", "C2", 6.5, 1.11, 2.0, 60.5, 5417, 327980, 2848341, 1.15e-1, 14.2},
        {"leo", "T1", "C1", 2.0, 0.59, -2.0, 10.7, 54, 579, 1342, 4.32e-1, 3.1},
        {"leo", "T1", "C2", 1.9, 0.59, -2.0, 10.7, 72, 772, 1789, 4.32e-1, 3.1},
        {"leo", "T2", "C1", -3.0, 0.20, -7.0, 10.9, 712, 7767, 17690, 4.39e-1, 3.1},
        {"leo", "T2", "C2", -3.0, 0.20, -7.0, 10.9, 1785, 19473, 44351, 4.39e-1, 3.1},
        {"w1", "T2", "C1", 4.0, 0.82, 0.0, 44.0, 3684, 163200, 1122709, 1.45e-1, 10.9},
        {"w2", "T2", "C1", 4.2, 0.82, 0.0, 44.7, 8585, 384000, 2865999, 1.34e-1, 11.3},
        {"w3", "T2", "C1", 4.0, 0.82, 0.0, 44.7, 5946, 265900, 1928531, 1.38e-1, 11.2},
    };
    return rows;
}

const ReferenceRow* find_reference(const std::string& scenario, const std::string& traffic,
                                   const std::string& channel) {
    for (const ReferenceRow& r : reference_rows()) {
        if (r.scenario == scenario && r.traffic == traffic && r.channel == channel) return &r;
    }
    return nullptr;
}

}  // namespace foasim
