// config.cpp — INI/JSON flat-key parsing and scenario assembly.
#include "satsec/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace satsec::config {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, std::string v) {
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

// tracked so omega_l/omega_e consistency can be enforced across both spellings
struct ApplyState {
    bool omega_l_set = false, omega_e_set = false;
    bool explicit_turbulence = false;
};

void apply(RunConfig& c, ApplyState& st, const std::string& key, const std::string& value) {
    using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"mode",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             std::string m = v;
             std::transform(m.begin(), m.end(), m.begin(), ::tolower);
             if (m != "zf" && m != "nzf")
                 throw ConfigError("config: key '" + k + "' must be 'zf' or 'nzf'");
             c.mode = m;
         }},
        {"node_index", [](RunConfig& c, const std::string& k, const std::string& v) { c.node_index = static_cast<int>(parse_int(k, v)); }},
        {"k_apertures", [](RunConfig& c, const std::string& k, const std::string& v) { c.k_apertures = static_cast<int>(parse_int(k, v)); }},
        {"n_beams", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.num_beams = static_cast<int>(parse_int(k, v)); }},
        {"gamma_th_db", [](RunConfig& c, const std::string& k, const std::string& v) { c.gamma_th_db = parse_double(k, v); }},
        {"detection_order", [](RunConfig& c, const std::string& k, const std::string& v) { c.detection_order = static_cast<int>(parse_int(k, v)); }},
        {"derive_turbulence", [](RunConfig& c, const std::string& k, const std::string& v) { c.derive_turbulence = parse_bool(k, v); }},
        {"alpha_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha_legit = parse_double(k, v); }},
        {"beta_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.beta_legit = parse_double(k, v); }},
        {"xi2_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.xi2_legit = parse_double(k, v); }},
        {"alpha_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha_eve = parse_double(k, v); }},
        {"beta_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.beta_eve = parse_double(k, v); }},
        {"xi2_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.xi2_eve = parse_double(k, v); }},
        {"ps_over_sigma1_db", [](RunConfig& c, const std::string& k, const std::string& v) { c.ps_over_sigma1_db = parse_double(k, v); }},
        {"ps_over_sigmae_db", [](RunConfig& c, const std::string& k, const std::string& v) { c.ps_over_sigmae_db = parse_double(k, v); }},
        {"omega_l", [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_l = parse_double(k, v); }},
        {"omega_e", [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_e = parse_double(k, v); }},
        {"wavelength_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.wavelength = parse_double(k, v); }},
        {"ogs_altitude_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.ogs_altitude = parse_double(k, v); }},
        {"satellite_altitude_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.satellite_altitude = parse_double(k, v); }},
        {"zenith_angle_rad", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.zenith_angle = parse_double(k, v); }},
        {"wind_speed_ms", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.wind_speed = parse_double(k, v); }},
        {"ground_turbulence_a", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.ground_refractive_index = parse_double(k, v); }},
        {"beam_waist_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.beam_waist = parse_double(k, v); }},
        {"aperture_radius_legit_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.fso_profile.aperture_radius = parse_double(k, v); }},
        {"aperture_radius_eve_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.aperture_radius_eve_m = parse_double(k, v); }},
        {"freq_hz", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.frequency = parse_double(k, v); }},
        {"noise_temp_k", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.noise_temperature = parse_double(k, v); }},
        {"bandwidth_hz", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.bandwidth = parse_double(k, v); }},
        {"gt_dbi", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.tx_gain = db_to_linear(parse_double(k, v)); }},
        {"grl_dbi", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.rx_gain_legit = db_to_linear(parse_double(k, v)); }},
        {"gre_dbi", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.rx_gain_eve = db_to_linear(parse_double(k, v)); }},
        {"slant_range_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.slant_range = parse_double(k, v); }},
        {"cell_diameter_m", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.cell_diameter = parse_double(k, v); }},
        {"phi3db_deg", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.half_power_angle = parse_double(k, v) * M_PI / 180.0; }},
        {"offset_legit_rad", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.offset_legit = parse_double(k, v); }},
        {"offset_eve_rad", [](RunConfig& c, const std::string& k, const std::string& v) { c.geometry.offset_eve = parse_double(k, v); }},
        {"psat_db", [](RunConfig& c, const std::string& k, const std::string& v) { c.psat_db = parse_double(k, v); }},
        {"b_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.b_legit = parse_double(k, v); }},
        {"ms_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.ms_legit = static_cast<int>(parse_int(k, v)); }},
        {"omega_s_legit", [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_s_legit = parse_double(k, v); }},
        {"b_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.b_eve = parse_double(k, v); }},
        {"ms_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.ms_eve = static_cast<int>(parse_int(k, v)); }},
        {"omega_s_eve", [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_s_eve = parse_double(k, v); }},
        {"mc_samples", [](RunConfig& c, const std::string& k, const std::string& v) { c.mc_samples = static_cast<std::uint64_t>(parse_int(k, v)); }},
        {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int(k, v)); }},
    };

    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("config: unknown key '" + key + "'");
    it->second(c, key, value);
    if (key == "omega_l") st.omega_l_set = true;
    if (key == "omega_e") st.omega_e_set = true;
    if (key.rfind("alpha_", 0) == 0 || key.rfind("beta_", 0) == 0 || key.rfind("xi2_", 0) == 0)
        st.explicit_turbulence = true;
}

void finalize(RunConfig& c, const ApplyState& st) {
    if (st.omega_l_set && !st.omega_e_set) c.omega_e = 1.0 - c.omega_l;
    if (st.omega_e_set && !st.omega_l_set) c.omega_l = 1.0 - c.omega_e;
    if (std::abs(c.omega_l + c.omega_e - 1.0) > 1e-9)
        throw ConfigError("config: omega_l + omega_e must equal 1 (got " +
                          std::to_string(c.omega_l + c.omega_e) + ")");
    if (c.omega_l < 0.0 || c.omega_l > 1.0)
        throw ConfigError("config: omega_l must lie in [0, 1]");
    if (c.derive_turbulence && st.explicit_turbulence)
        throw ConfigError(
            "config: contradictory keys: derive_turbulence=true together with explicit "
            "alpha/beta/xi2 values");
    if (c.k_apertures < 1) throw ConfigError("config: k_apertures >= 1 required");
    if (c.node_index < 0 || c.node_index >= c.geometry.num_beams)
        throw ConfigError("config: node_index must lie in [0, n_beams)");
    if (c.detection_order != 1 && c.detection_order != 2)
        throw ConfigError("config: detection_order must be 1 or 2");
}

std::string json_scalar_to_string(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ConfigError("config: key '" + key + "' has a non-scalar value");
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    ApplyState st;
    apply(cfg, st, key, value);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    RunConfig cfg;
    ApplyState st;

    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: JSON parse error: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config: JSON root must be an object");
        for (const auto& [k, v] : j.items()) apply(cfg, st, k, json_scalar_to_string(v, k));
    } else {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = trim(line);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[' && s.back() == ']') continue;  // sections are cosmetic
            const size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            const size_t cmt = value.find_first_of(";#");
            if (cmt != std::string::npos) value = trim(value.substr(0, cmt));
            apply(cfg, st, key, value);
        }
    }
    finalize(cfg, st);
    return cfg;
}

secrecy::SecrecyScenario RunConfig::build_scenario() const {
    secrecy::SecrecyScenario s;
    s.mode = (mode == "zf") ? secrecy::Mode::ZF : secrecy::Mode::NZF;
    s.num_apertures = k_apertures;
    s.node_index = node_index;
    s.gamma_th = db_to_linear(gamma_th_db);

    const double mu1 = omega_l * db_to_linear(ps_over_sigma1_db);
    const double mue = omega_e * db_to_linear(ps_over_sigmae_db);
    if (derive_turbulence) {
        channel::FsoUplinkProfile pl = fso_profile;
        pl.omega_l = omega_l;
        pl.omega_e = omega_e;
        pl.detection_order = detection_order;
        pl.num_apertures = k_apertures;
        s.fso_legit = channel::derive_turbulence(pl, mu1);
        channel::FsoUplinkProfile pe = pl;
        pe.aperture_radius = aperture_radius_eve_m;
        s.fso_eve = channel::derive_turbulence(pe, mue);
    } else {
        s.fso_legit = {alpha_legit, beta_legit, xi2_legit, mu1, detection_order};
        s.fso_eve = {alpha_eve, beta_eve, xi2_eve, mue, detection_order};
    }

    const double psat = db_to_linear(psat_db);
    const auto vl = channel::build_v_matrix(geometry, channel::NodeClass::Legitimate);
    const auto ve = channel::build_v_matrix(geometry, channel::NodeClass::Eavesdropper);
    s.precoding = channel::make_precoding_context(vl, ve, psat, geometry.num_beams);

    const double gbar = (s.mode == secrecy::Mode::ZF) ? s.precoding.power_norm
                                                      : psat / geometry.num_beams;
    s.rf_legit = {b_legit, ms_legit, omega_s_legit, gbar};
    s.rf_eve = {b_eve, ms_eve, omega_s_eve, gbar};
    return s;
}

}  // namespace satsec::config
