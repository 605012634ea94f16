// secrecy.hpp — closed-form, quadrature-reference, and asymptotic intercept
// probability for the hybrid FSO-uplink / RF-downlink system.
#pragma once

#include "satsec/channel.hpp"
#include "satsec/series_control.hpp"

namespace satsec::secrecy {

enum class Mode { ZF, NZF };
enum class IpCase { ZF_case1, ZF_case2, ZF_case3, NZF };

const char* to_string(IpCase c);

struct SecrecyScenario {
    channel::TurbulenceParams fso_legit;  // per-aperture branch law (mu = mu_1)
    channel::TurbulenceParams fso_eve;
    int num_apertures = 3;  // K
    channel::ShadowedRicianParams rf_legit;  // gamma_bar set by the caller
    channel::ShadowedRicianParams rf_eve;
    channel::PrecodingContext precoding;
    Mode mode = Mode::ZF;
    double gamma_th = 100.0;  // linear
    int node_index = 2;       // 0-based index i

    void validate() const;
    // downlink SINR saturation levels for the selected node
    double sat_zf() const { return precoding.saturation_zf(node_index); }
    double sat_legit() const { return precoding.saturation_legit(node_index); }
    double sat_eve() const { return precoding.saturation_eve(node_index); }
};

struct IpDiagnostics {
    int series_terms_max = 0;
    bool truncated = false;
    bool k_fallback_quadrature = false;  // K(phi) tail used its quadrature twin
    bool w_fallback_quadrature = false;  // the case-2/3 W term used 1-D quadrature
    double ip_preclamp = 0.0;
};

struct IpResult {
    double ip = 0.0;  // clamped to [0,1]
    IpCase case_fired = IpCase::ZF_case1;
    IpDiagnostics diagnostics;
};

struct AsymptoticResult {
    double coding_gain = 0.0;     // G_c
    double diversity_order = 0.0; // G_d = min(1, K·x_d)
    double anchor = 0.0;          // a^(Xi)
    double ip_asymptote = 0.0;    // G_c · gamma_bar^{-G_d} at the scenario's operating point
    bool ill_conditioned = false; // K·x_d within 1e-3 of 1
};

struct CapacityComponents {
    double cs_hop1 = 0.0;   // first hop vs FSO eavesdropper
    double cs_hop2 = 0.0;   // second hop vs downlink eavesdropper
    double cs_cross = 0.0;  // first hop vs downlink eavesdropper
    double cs = 0.0;        // overall min
};

// J_Xi(y) = ∫₀^{ỹ} f_eveSINR (1 - F_legit) dz with the mode's clamping of y.
double j_integral(double y, const SecrecyScenario& s,
                  const SeriesControl& ctrl = default_series_control());
double j_integral_quadrature(double y, const SecrecyScenario& s);

// K(phi) = ∫_phi^∞ f_{gamma1} F_{gamma1e} dy.
double k_integral(double phi, const SecrecyScenario& s,
                  const SeriesControl& ctrl = default_series_control());
double k_integral_quadrature(double phi, const SecrecyScenario& s);

// Closed-form IP with case dispatch (fast path; validated against the
// quadrature reference below, which defines correctness).
IpResult intercept_probability(const SecrecyScenario& s,
                               const SeriesControl& ctrl = default_series_control());

// Permanent 2-D adaptive-quadrature reference:
// IP = 1 - ∫_{gamma_th}^∞ f_{gamma1}(y) F_{gamma1e}(y) J(y) dy.
double intercept_probability_quadrature(const SecrecyScenario& s);

// High-SNR expansion: IP ≈ G_c · gamma_bar^{-G_d}.
AsymptoticResult intercept_probability_asymptotic(const SecrecyScenario& s);

CapacityComponents secrecy_capacity_components(double g1, double g1e, double gl, double ge);

}  // namespace satsec::secrecy
