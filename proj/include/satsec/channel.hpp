// channel.hpp — physical channel models for both hops: FSO uplink
// (Gamma-Gamma turbulence + pointing errors, selection combining) and RF
// multibeam downlink (beam geometry, precoding, shadowed-Rician fading).
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "satsec/series_control.hpp"

namespace satsec::channel {

// ---------- types ----------

struct FsoUplinkProfile {
    double wavelength = 1550e-9;          // m
    double ogs_altitude = 25.0;           // m
    double satellite_altitude = 6000e3;   // m
    double zenith_angle = 0.0;            // rad
    double wind_speed = 21.0;             // m/s
    double ground_refractive_index = 1.7e-14;  // A, m^(-2/3)
    double beam_waist = 0.08;             // W0, m
    double aperture_radius = 0.5;         // R, m
    double omega_l = 0.7;                 // power split, legit
    double omega_e = 0.3;                 // power split, eve (omega_l + omega_e = 1)
    int detection_order = 1;              // r in {1,2}
    int num_apertures = 3;                // K

    void validate() const;
};

struct TurbulenceParams {
    double alpha = 4.3;
    double beta = 2.6;
    double xi2 = 1.8;           // pointing error strength
    double mu = 1.0;            // average electrical SNR (linear), mu_r
    int detection_order = 1;    // r

    void validate() const;
    // Upsilon = xi2*alpha*beta/(xi2+1) and the normalization P = xi2/(Γ(α)Γ(β)).
    double upsilon() const;
    double norm_p() const;
};

struct RfGeometry {
    int num_beams = 5;              // N
    double frequency = 20e9;        // Hz
    double noise_temperature = 193.15;  // K
    double bandwidth = 50e6;        // Hz
    double tx_gain = 1e6;           // G_T linear (60 dBi)
    double rx_gain_legit = 1e4;     // G_R linear, legitimate nodes (40 dBi)
    double rx_gain_eve = 316.227766016837933;  // G_R linear, eavesdroppers (25 dBi)
    double slant_range = 6000e3;    // m
    double cell_diameter = 100e3;   // m
    double half_power_angle = 0.4 * M_PI / 180.0;  // phi_3dB, rad
    double offset_legit = 3e-3;     // node offset from own-beam boresight, rad
    double offset_eve = 6.66e-4;    // rad

    void validate() const;
};

using Matrix = std::vector<std::vector<double>>;

struct PrecodingContext {
    Matrix v_legit, v_eve;
    Matrix a_inv;                    // A = v_legit^{-1}
    double power_norm = 0.0;         // phi_zf = P_SAT / (N * Tr[(V V^H)^{-1}])
    double trace_inv = 0.0;          // Tr[(V V^H)^{-1}]
    std::vector<double> psi, theta;  // ZF eavesdropper scalars, per node index
    std::vector<double> psi_legit, theta_legit;  // non-ZF, legit nodes
    std::vector<double> psi_eve, theta_eve;      // non-ZF, eve nodes
    double p_sat = 0.0;

    double saturation_zf(int i) const { return psi[i] / theta[i]; }
    double saturation_legit(int i) const { return psi_legit[i] / theta_legit[i]; }
    double saturation_eve(int i) const { return psi_eve[i] / theta_eve[i]; }
};

struct ShadowedRicianParams {
    double b = 1.4;        // half multipath power
    int m_s = 2;           // fading severity (integer >= 1)
    double omega = 3.0;    // LOS power
    double gamma_bar = 1.0;  // average SNR (linear)

    void validate() const;
    double lambda() const;  // (1/2b)(2bm/(2bm+Ω))^m
    double rho() const { return 1.0 / (2.0 * b); }
    double delta() const;   // Ω/(2b(2bm+Ω))
    double v() const { return rho() - delta(); }
};

// ---------- operations ----------

// Hufnagel-Valley profile + Rytov integral + pointing-error geometry; a
// convenience layer — (alpha, beta, xi2) are first-class inputs elsewhere.
TurbulenceParams derive_turbulence(const FsoUplinkProfile& profile, double avg_snr);

// Gamma-Gamma + pointing-errors PDF/CDF (detection order r = 1 or 2).
double gg_pdf(double z, const TurbulenceParams& p);
double gg_cdf(double z, const TurbulenceParams& p);

// CDF of the K-branch selection-combined SNR via the multinomial residue
// series (r = 1 only); the direct product gg_cdf^K is its reference.
double sc_cdf(double z, const TurbulenceParams& p, int K,
              const SeriesControl& ctrl = default_series_control());

// Normalized beam radiation gain; exact 1 at boresight.
double beam_gain(double angle, double phi_3db);

enum class NodeClass { Legitimate, Eavesdropper };

// Path-loss/radiation-pattern coefficient matrix V for one node class.
Matrix build_v_matrix(const RfGeometry& geom, NodeClass node_class);

// Precoding scalars for both ZF and non-ZF operation.
PrecodingContext make_precoding_context(const Matrix& v_legit, const Matrix& v_eve,
                                        double p_sat, int N);

// Shadowed-Rician SNR pdf/cdf (finite series, integer m_s).
double sr_pdf(double z, const ShadowedRicianParams& p);
double sr_cdf(double z, const ShadowedRicianParams& p);

// Downlink SINR CDFs: F(z/(psi - theta z)) below saturation, 1 above.
double sinr_cdf_zf(double z, const PrecodingContext& ctx, const ShadowedRicianParams& p_eve, int i);
double sinr_cdf_nzf(double z, const PrecodingContext& ctx, const ShadowedRicianParams& p_node,
                    int i, NodeClass node_class);

}  // namespace satsec::channel
