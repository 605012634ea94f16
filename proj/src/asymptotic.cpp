// asymptotic.cpp — high-SNR expansion IP ≈ G_c · gbar^{-G_d} with
// G_d = min(1, K·x_d), x_d = min(xi2, alpha, beta) of the combined uplink.
#include <algorithm>
#include <cmath>
#include <iostream>

#include "satsec/sc_series.hpp"
#include "satsec/secrecy.hpp"
#include "satsec/secrecy_series.hpp"
#include "satsec/specfun.hpp"

namespace satsec::secrecy {

namespace {

using detail::SrBig;

BigFloat upper_gamma(long a, const BigFloat& x) {
    return bf_gamma_upper(BigFloat(static_cast<double>(a)), x);
}

// Q for the ZF map: gbar · ∫₀^L f_eveSINR(z) · lam_l v_l z / gbar dz
BigFloat q_zf(const SrBig& sl, const SrBig& se, const BigFloat& psi, const BigFloat& theta) {
    const BigFloat re = se.v / (se.gbar * theta);
    BigFloat tot(0.0);
    for (int n2 = 0; n2 < se.ms; ++n2) {
        const BigFloat U = se.lam * bf_binomial(se.ms - 1, n2) * bf_pow_si(se.delta, n2) /
                           (bf_pow_si(se.gbar, n2 + 1) * bf_factorial(n2));
        BigFloat inner(0.0);
        for (int p = 0; p <= n2 + 1; ++p) {
            const double sgn = ((n2 + 1 - p) % 2 == 0) ? 1.0 : -1.0;
            inner += bf_binomial(n2 + 1, p) * BigFloat(sgn) * bf_pow_si(re, -p) *
                     upper_gamma(p, re);
        }
        tot += U * bf_pow_si(theta, -n2 - 2) * inner;
    }
    return sl.lam * psi * bf_exp(re) * tot;
}

// Q for the non-ZF map: gbar · ∫₀^{Le} f_eveSINR(z) · lam_l v_l z/(gbar(PsiL-ThetaL z)) dz;
// T > 0 puts the pole inside the range — principal value via Ei.
BigFloat q_nzf(const SrBig& sl, const SrBig& se, const BigFloat& psi_l, const BigFloat& theta_l,
               const BigFloat& psi_e, const BigFloat& theta_e) {
    const BigFloat T = psi_e * theta_l - psi_l * theta_e;
    const BigFloat s = se.v / se.gbar;
    BigFloat tot(0.0);
    for (int n2 = 0; n2 < se.ms; ++n2) {
        const BigFloat C = bf_binomial(se.ms - 1, n2) * bf_pow_si(se.delta, n2) /
                           (bf_factorial(n2) * bf_pow_si(se.gbar, n2 + 1));
        BigFloat I(0.0);
        if (T.sign() < 0) {
            const BigFloat beta = psi_l / (-T);
            for (int k = 0; k <= n2 + 1; ++k) {
                const double sgn = ((n2 + 1 - k) % 2 == 0) ? 1.0 : -1.0;
                I += bf_binomial(n2 + 1, k) * BigFloat(sgn) * bf_pow_si(beta, n2 + 1 - k) *
                     bf_exp(beta * s) * bf_pow_si(s, -k) * upper_gamma(k, beta * s);
            }
            I /= -T;
        } else {
            const BigFloat bt = psi_l / T;
            const BigFloat G = s * bt;
            for (int k = 1; k <= n2 + 1; ++k)
                I += bf_binomial(n2 + 1, k) * bf_pow_si(bt, n2 + 1 - k) * bf_pow_si(s, -k) *
                     (bf_gamma(BigFloat(k)) - detail::lowergamma_any(k, -G));
            I -= bf_pow_si(bt, n2 + 1) * bf_ei(G);
            I *= -bf_exp(-G) / T;
        }
        tot += C * I;
    }
    return sl.lam * se.lam * psi_e * tot;
}

struct DominantResidue {
    double xd = 0.0;     // min(xi2, alpha, beta)
    BigFloat a0d;        // residue coefficient of the dominant CDF-kernel pole
};

DominantResidue dominant_residue(const channel::TurbulenceParams& p) {
    double alpha = p.alpha, beta = p.beta, xi2 = p.xi2;
    const auto fam = detail::cdf_families(alpha, beta, xi2, 0);
    detail::separate_gg_exponents(alpha, beta, xi2);
    DominantResidue d;
    if (xi2 <= alpha && xi2 <= beta) {
        d.xd = xi2;
        d.a0d = fam.a0;
    } else if (alpha <= beta) {
        d.xd = alpha;
        d.a0d = fam.a2[0];
    } else {
        d.xd = beta;
        d.a0d = fam.a3[0];
    }
    return d;
}

// X(phi): tail correction of the dominant-term expansion, constant in gbar.
double x_closed(const channel::TurbulenceParams& legit, const channel::TurbulenceParams& eve,
                int K, double eps, double phi) {
    const DominantResidue d = dominant_residue(legit);
    const double kxd = K * d.xd;
    const double ups_p = legit.xi2 * legit.alpha * legit.beta / (legit.xi2 + 1.0);
    const double ups_e = eve.upsilon() / eve.mu;

    ScopedPrecision sp(320);
    const BigFloat pref =
        BigFloat(eve.norm_p()) *
        bf_pow_si(d.a0d * BigFloat(legit.norm_p()) * bf_pow(BigFloat(eps * ups_p), BigFloat(d.xd)),
                  K);
    const BigFloat t1 = bf_gamma(BigFloat(eve.alpha + kxd)) * bf_gamma(BigFloat(eve.beta + kxd)) /
                        (bf_pow(BigFloat(ups_e), BigFloat(kxd)) * BigFloat(eve.xi2 + kxd));
    specfun::MeijerGParams gp;
    gp.a_front = {1.0 - kxd};
    gp.a_back = {eve.xi2 + 1.0};
    gp.b_front = {eve.xi2, eve.alpha, eve.beta};
    gp.b_back = {-kxd};
    const double g = specfun::meijer_g(gp, ups_e * phi);
    return (pref * (t1 - bf_pow(BigFloat(phi), BigFloat(kxd)) * BigFloat(g))).to_double();
}

}  // namespace

AsymptoticResult intercept_probability_asymptotic(const SecrecyScenario& s) {
    s.validate();
    if (s.fso_legit.detection_order != 1 || s.fso_eve.detection_order != 1)
        throw UnsupportedParameterError(
            "intercept_probability_asymptotic: requires detection_order r = 1");

    const int i = s.node_index;
    const double gbar = s.rf_legit.gamma_bar;
    const double eps = gbar / s.fso_legit.mu;

    const DominantResidue d = dominant_residue(s.fso_legit);
    const double kxd = s.num_apertures * d.xd;

    AsymptoticResult out;
    out.diversity_order = std::min(1.0, kxd);
    out.ill_conditioned = std::abs(kxd - 1.0) < 1e-3;
    if (out.ill_conditioned)
        std::cerr << "[satsec] warning: K*x_d = " << kxd
                  << " is within 1e-3 of 1; the asymptote is ill-conditioned at this "
                     "diversity-order crossover\n";

    // anchor of the expansion: the threshold, or the ZF saturation level when
    // the latter exceeds the threshold
    double a = s.gamma_th;
    if (s.mode == Mode::ZF) {
        const double L = s.sat_zf();
        if (s.gamma_th < L) a = L;
    }
    out.anchor = a;

    double gc;
    if (kxd < 1.0) {
        ScopedPrecision sp(320);
        const double ups_p = s.fso_legit.xi2 * s.fso_legit.alpha * s.fso_legit.beta /
                             (s.fso_legit.xi2 + 1.0);
        const BigFloat lead = bf_pow_si(
            d.a0d * BigFloat(s.fso_legit.norm_p()) *
                bf_pow(BigFloat(eps * ups_p * a), BigFloat(d.xd)),
            s.num_apertures);
        gc = (lead * BigFloat(channel::gg_cdf(a, s.fso_eve))).to_double() +
             x_closed(s.fso_legit, s.fso_eve, s.num_apertures, eps, a);
    } else {
        ScopedPrecision sp(320);
        const SrBig sl(s.rf_legit), se(s.rf_eve);
        if (s.mode == Mode::ZF)
            gc = q_zf(sl, se, BigFloat(s.precoding.psi[i]), BigFloat(s.precoding.theta[i]))
                     .to_double();
        else
            gc = q_nzf(sl, se, BigFloat(s.precoding.psi_legit[i]),
                       BigFloat(s.precoding.theta_legit[i]), BigFloat(s.precoding.psi_eve[i]),
                       BigFloat(s.precoding.theta_eve[i]))
                     .to_double();
    }
    out.coding_gain = gc;
    out.ip_asymptote = gc * std::pow(gbar, -out.diversity_order);
    return out;
}

}  // namespace satsec::secrecy
