// config.hpp — flat-key run configuration (INI or JSON) with the reference
// system parameters as defaults, and its expansion into a SecrecyScenario.
#pragma once

#include <cstdint>
#include <string>

#include "satsec/channel.hpp"
#include "satsec/secrecy.hpp"

namespace satsec::config {

struct RunConfig {
    // operating mode
    std::string mode = "zf";  // "zf" | "nzf"
    int node_index = 2;
    int k_apertures = 3;
    double gamma_th_db = 20.0;
    int detection_order = 1;

    // uplink FSO: either explicit turbulence parameters (defaults below) or
    // derivation from the atmospheric profile
    bool derive_turbulence = false;
    double alpha_legit = 4.3, beta_legit = 2.6, xi2_legit = 1.8;
    double alpha_eve = 4.1, beta_eve = 2.3, xi2_eve = 1.1;
    double ps_over_sigma1_db = 80.0;
    double ps_over_sigmae_db = 60.0;
    double omega_l = 0.7, omega_e = 0.3;
    channel::FsoUplinkProfile fso_profile;
    double aperture_radius_eve_m = 1.0;  // eavesdropper telescope radius

    // downlink RF
    channel::RfGeometry geometry;
    double psat_db = 40.0;

    // shadowed-Rician fading
    double b_legit = 1.4, omega_s_legit = 3.0;
    int ms_legit = 2;
    double b_eve = 1.4, omega_s_eve = 3.0;
    int ms_eve = 2;

    // Monte Carlo
    std::uint64_t mc_samples = 200000;
    std::uint64_t seed = 12345;

    // Expand into the scenario consumed by the engines (builds the V matrices,
    // the precoding context, and the per-law average SNRs).
    secrecy::SecrecyScenario build_scenario() const;
};

// Load from .json (by extension) or INI-style key=value otherwise. Unknown or
// contradictory keys raise ConfigError.
RunConfig load_config(const std::string& path);

// Apply one flat key to an existing config (used by presets/CLI overrides).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace satsec::config
