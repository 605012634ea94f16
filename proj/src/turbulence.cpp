// turbulence.cpp — Hufnagel-Valley profile, Rytov variance, scintillation
// parameters, and pointing-error strength for the FSO uplink.
//
// Chosen standard forms (the contract validates these qualitatively; the exact
// turbulence triple (alpha, beta, xi2) is a first-class input elsewhere):
//   Cn2(h) = 0.00594 (Vw/27)^2 (1e-5 h)^10 e^{-h/1000}
//            + 2.7e-16 e^{-h/1500} + A e^{-h/100}
//   sigma_R^2 = 2.25 k^{7/6} sec^{11/6}(zeta) ∫_{h0}^{d} Cn2(h) (h-h0)^{5/6} dh
//   alpha = [exp(0.49 s2 / (1 + 1.11 s2^{6/5})^{7/6}) - 1]^{-1}
//   beta  = [exp(0.51 s2 / (1 + 0.69 s2^{6/5})^{5/6}) - 1]^{-1}
//   xi = w_eq / (2 sigma_s), with the equivalent-beam-waist construction
//   w_eq^2 = w_L^2 sqrt(pi) erf(nu) / (2 nu e^{-nu^2}), nu = sqrt(pi/2) R / w_L,
//   and uplink beam-wander jitter sigma_s^2 = 0.54 L^2 (lambda/(2 W0))^2 (2 W0/r0)^{5/3}.
#include <cmath>

#include "satsec/channel.hpp"
#include "satsec/quadrature.hpp"

namespace satsec::channel {

namespace {
double cn2(double h, double vw, double A) {
    return 0.00594 * std::pow(vw / 27.0, 2.0) * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0) +
           2.7e-16 * std::exp(-h / 1500.0) + A * std::exp(-h / 100.0);
}
}  // namespace

TurbulenceParams derive_turbulence(const FsoUplinkProfile& profile, double avg_snr) {
    profile.validate();
    if (profile.wind_speed == 0.0 && profile.ground_refractive_index == 0.0)
        throw ModelError("derive_turbulence: degenerate zero-turbulence profile (alpha, beta -> inf)");

    const double h0 = profile.ogs_altitude;
    const double H = profile.satellite_altitude;
    const double sec = 1.0 / std::cos(profile.zenith_angle);
    const double k = 2.0 * M_PI / profile.wavelength;

    auto integ_rytov = [&](double h) {
        return cn2(h, profile.wind_speed, profile.ground_refractive_index) *
               std::pow(h - h0, 5.0 / 6.0);
    };
    // the profile is negligible above ~40 km; split for the adaptive rule
    const double hcap = std::min(H, 120e3);
    const double I = quad::integrate_pts(integ_rytov, {h0, h0 + 100.0, 1e3, 5e3, 20e3, hcap},
                                         1e-22, 1e-10);
    const double s2 = 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * I;
    if (!(s2 > 0.0) || !std::isfinite(s2))
        throw ModelError("derive_turbulence: Rytov variance non-positive or non-finite");

    const double s125 = std::pow(s2, 6.0 / 5.0);
    const double alpha = 1.0 / (std::exp(0.49 * s2 / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0)) - 1.0);
    const double beta = 1.0 / (std::exp(0.51 * s2 / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0)) - 1.0);

    // pointing-error strength from beam geometry and beam-wander jitter
    const double L = (H - h0) * sec;
    const double w0 = profile.beam_waist;
    const double wl = w0 * std::sqrt(1.0 + std::pow(profile.wavelength * L / (M_PI * w0 * w0), 2.0));
    const double nu = std::sqrt(M_PI / 2.0) * profile.aperture_radius / wl;
    const double weq2 = wl * wl * std::sqrt(M_PI) * std::erf(nu) / (2.0 * nu * std::exp(-nu * nu));

    auto integ_cn2 = [&](double h) { return cn2(h, profile.wind_speed, profile.ground_refractive_index); };
    const double Icn = quad::integrate_pts(integ_cn2, {h0, h0 + 100.0, 1e3, 5e3, 20e3, hcap},
                                           1e-24, 1e-10);
    const double r0 = std::pow(0.423 * k * k * sec * Icn, -3.0 / 5.0);
    const double sigs2 = 0.54 * L * L * std::pow(profile.wavelength / (2.0 * w0), 2.0) *
                         std::pow(2.0 * w0 / r0, 5.0 / 3.0);
    const double xi2 = weq2 / (4.0 * sigs2);

    TurbulenceParams t;
    t.alpha = alpha;
    t.beta = beta;
    t.xi2 = xi2;
    t.mu = avg_snr;
    t.detection_order = profile.detection_order;
    t.validate();
    return t;
}

}  // namespace satsec::channel
