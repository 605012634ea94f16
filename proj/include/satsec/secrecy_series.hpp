// secrecy_series.hpp — internal BigFloat series engines behind the secrecy
// closed forms: the downlink J-integrals, the K(phi) tail, and the W term of
// the ZF middle/high-saturation cases (with their quadrature fallbacks).
#pragma once

#include <map>

#include "satsec/bigfloat.hpp"
#include "satsec/channel.hpp"
#include "satsec/sc_series.hpp"
#include "satsec/series_control.hpp"

namespace satsec::detail {

// shadowed-Rician derived constants lifted to BigFloat
struct SrBig {
    BigFloat lam, rho, delta, v, gbar;
    int ms;
    explicit SrBig(const channel::ShadowedRicianParams& p)
        : lam(p.lambda()), rho(p.rho()), delta(p.delta()), v(p.v()), gbar(p.gamma_bar), ms(p.m_s) {}
};

// J_ZF(y) = ∫₀^{min(y, L)} f_eveSINR (1 - F_legitSNR) dz;  y may be +inf.
BigFloat jzf_series(const SrBig& sl, const SrBig& se, const BigFloat& psi, const BigFloat& theta,
                    double y, int jmax = 120);

// J_NZF(y) = ∫₀^{min(y, Ll, Le)} f_eveSINR (1 - F_legitSINR) dz; branches on the
// sign of T = PsiE·ThetaL - PsiL·ThetaE (the Ll-vs-Le ordering).
BigFloat jnzf_series(const SrBig& sl, const SrBig& se, const BigFloat& psi_l,
                     const BigFloat& theta_l, const BigFloat& psi_e, const BigFloat& theta_e,
                     double y, int jmax = 120);

// weights w(P) with J(L) - J(y) = Σ_P w(P)·Γ(P, Ye·(y/(psi-theta·y) + 1/theta))
std::map<long, BigFloat> jzf_weights(const SrBig& sl, const SrBig& se, const BigFloat& psi,
                                     const BigFloat& theta, int jmax = 12);

// K(phi) = ∫_phi^∞ f_{gamma1} F_{gamma1e} dy, evaluated as
// 1 - F1(phi)F1e(phi) - ∫_phi^∞ F1·f1e, with the tail by the H1-H2 series when
// it converges (it is asymptotic) and by direct quadrature otherwise.
struct KPhiResult {
    double value = 0.0;
    bool fallback_quadrature = false;
};
KPhiResult k_phi(const ScTerms& terms, const channel::TurbulenceParams& legit, int K,
                 const channel::TurbulenceParams& eve, double phi, const SeriesControl& ctrl);

// W = ∫_{gth}^{L} f1 F1e (J(L) - J(y)) dy — consolidated q-series (ZF cases 2 & 3)
BigFloat w_series(const ScTerms& terms, const channel::TurbulenceParams& eve, const SrBig& sl,
                  const SrBig& se, const BigFloat& psi, const BigFloat& theta, double gth,
                  int qmax = 250);

// quadrature fallback for W when gth/L -> 0 (q-series cancels catastrophically)
double w_quad(const channel::TurbulenceParams& legit, int K, const channel::TurbulenceParams& eve,
              const SrBig& sl, const SrBig& se, const BigFloat& psi, const BigFloat& theta,
              double gth);

// γ(k, x) for integer k >= 1 and ANY real x (finite-sum continuation).
BigFloat lowergamma_any(int k, const BigFloat& x);

}  // namespace satsec::detail
