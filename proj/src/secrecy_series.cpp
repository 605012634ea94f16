// secrecy_series.cpp — BigFloat series engines for the secrecy closed forms.
#include "satsec/secrecy_series.hpp"

#include <cmath>
#include <limits>

#include "satsec/quadrature.hpp"

namespace satsec::detail {

namespace {
BigFloat upper_gamma(long a, const BigFloat& x) { return bf_gamma_upper(BigFloat(static_cast<double>(a)), x); }
}  // namespace

BigFloat lowergamma_any(int k, const BigFloat& x) {
    BigFloat s(0.0), xp(1.0), fact(1.0);
    for (int m = 0; m < k; ++m) {
        if (m > 0) {
            xp *= x;
            fact *= BigFloat(m);
        }
        s += xp / fact;
    }
    return bf_factorial(k - 1) * (BigFloat(1.0) - bf_exp(-x) * s);
}

// ---------------- J_ZF ----------------

BigFloat jzf_series(const SrBig& sl, const SrBig& se, const BigFloat& psi, const BigFloat& theta,
                    double y, int jmax) {
    const BigFloat Yl = sl.v / sl.gbar;
    const BigFloat Ye = se.v / se.gbar;
    const BigFloat L = psi / theta;
    const double Ld = L.to_double();
    const double ytop = std::min(y, Ld);
    const BigFloat w0 = BigFloat(1.0) / theta;
    const bool finite_top = ytop < Ld * (1.0 - 1e-15);
    BigFloat wy(0.0);
    if (finite_top) wy = BigFloat(ytop) / (psi - theta * BigFloat(ytop)) + BigFloat(1.0) / theta;
    const BigFloat eYe = bf_exp(Ye / theta);

    BigFloat total(0.0);
    for (int n1 = 0; n1 < sl.ms; ++n1) {
        for (int n2 = 0; n2 < se.ms; ++n2) {
            const BigFloat U = sl.lam * (se.lam / se.gbar) * bf_binomial(sl.ms - 1, n1) *
                               bf_binomial(se.ms - 1, n2) * bf_pow_si(sl.delta, n1) /
                               bf_pow_si(sl.v, n1 + 1) * bf_pow_si(se.delta / se.gbar, n2) /
                               bf_factorial(n2);
            for (int k1 = 0; k1 <= n1; ++k1) {
                const BigFloat ck = bf_pow_si(Yl, k1) / bf_factorial(k1);
                int small_j = 0;
                for (int j = 0; j < jmax; ++j) {
                    const BigFloat cj = bf_pow_si(-Yl, j) / bf_factorial(j);
                    const int M = n2 + k1 + j;
                    BigFloat inner(0.0);
                    for (int p = 0; p <= M; ++p) {
                        const long P = p - k1 - j + 1;
                        BigFloat gd = upper_gamma(P, Ye * w0);
                        if (finite_top) gd -= upper_gamma(P, Ye * wy);
                        const double sgn = ((M - p) % 2 == 0) ? 1.0 : -1.0;
                        inner += bf_binomial(M, p) * BigFloat(sgn) *
                                 bf_pow_si(theta, p - n2 - 2 * k1 - 2 * j) *
                                 bf_pow_si(Ye, k1 + j - p - 1) * gd;
                    }
                    const BigFloat contrib = U * ck * cj * eYe * bf_pow_si(psi, k1 + j) * inner;
                    total += contrib;
                    if (bf_abs(contrib) <= BigFloat(1e-30) * bf_max(bf_abs(total), BigFloat(1e-280))) {
                        if (++small_j >= 2 && j >= 3) break;
                    } else {
                        small_j = 0;
                    }
                }
            }
        }
    }
    return total;
}

std::map<long, BigFloat> jzf_weights(const SrBig& sl, const SrBig& se, const BigFloat& psi,
                                     const BigFloat& theta, int jmax) {
    const BigFloat Yl = sl.v / sl.gbar;
    const BigFloat Ye = se.v / se.gbar;
    const BigFloat eYe = bf_exp(Ye / theta);
    std::map<long, BigFloat> wP;
    for (int n1 = 0; n1 < sl.ms; ++n1) {
        for (int n2 = 0; n2 < se.ms; ++n2) {
            const BigFloat U = sl.lam * (se.lam / se.gbar) * bf_binomial(sl.ms - 1, n1) *
                               bf_binomial(se.ms - 1, n2) * bf_pow_si(sl.delta, n1) /
                               bf_pow_si(sl.v, n1 + 1) * bf_pow_si(se.delta / se.gbar, n2) /
                               bf_factorial(n2);
            for (int k1 = 0; k1 <= n1; ++k1) {
                const BigFloat ck = bf_pow_si(Yl, k1) / bf_factorial(k1);
                for (int j = 0; j < jmax; ++j) {
                    const BigFloat cj = bf_pow_si(-Yl, j) / bf_factorial(j);
                    const int M = n2 + k1 + j;
                    for (int p = 0; p <= M; ++p) {
                        const long P = p - k1 - j + 1;
                        const double sgn = ((M - p) % 2 == 0) ? 1.0 : -1.0;
                        const BigFloat coef = U * ck * cj * eYe * bf_pow_si(psi, k1 + j) *
                                              bf_binomial(M, p) * BigFloat(sgn) *
                                              bf_pow_si(theta, p - n2 - 2 * k1 - 2 * j) *
                                              bf_pow_si(Ye, k1 + j - p - 1);
                        auto it = wP.find(P);
                        if (it == wP.end())
                            wP.emplace(P, coef);
                        else
                            it->second += coef;
                    }
                }
            }
        }
    }
    return wP;
}

// ---------------- J_NZF ----------------

BigFloat jnzf_series(const SrBig& sl, const SrBig& se, const BigFloat& psi_l,
                     const BigFloat& theta_l, const BigFloat& psi_e, const BigFloat& theta_e,
                     double y, int jmax) {
    const BigFloat Yl = sl.v / sl.gbar;
    const BigFloat Ye = se.v / se.gbar;
    const double Ll = (psi_l / theta_l).to_double();
    const double Le = (psi_e / theta_e).to_double();
    const BigFloat T = psi_e * theta_l - psi_l * theta_e;
    const double ytop = std::min(y, std::min(Ll, Le));
    BigFloat total(0.0);

    if (T.sign() > 0) {  // Ll < Le : substitute t = legit SINR kernel
        const bool finite = ytop < Ll * (1.0 - 1e-15);
        BigFloat t_y(0.0);
        if (finite) t_y = BigFloat(ytop) / (psi_l - theta_l * BigFloat(ytop));
        const BigFloat G = Ye * psi_l / T;
        const BigFloat Gl = Yl * psi_e / T;
        const BigFloat c = Yl / T;
        BigFloat x1(0.0);
        if (finite) x1 = psi_e + T * t_y;
        for (int n1 = 0; n1 < sl.ms; ++n1) {
            for (int n2 = 0; n2 < se.ms; ++n2) {
                const BigFloat C1 = sl.lam * (se.lam / se.gbar) * bf_binomial(sl.ms - 1, n1) *
                                    bf_binomial(se.ms - 1, n2) * bf_pow_si(sl.delta, n1) /
                                    bf_pow_si(sl.v, n1 + 1) * bf_pow_si(se.delta / se.gbar, n2) /
                                    bf_factorial(n2);
                for (int k1 = 0; k1 <= n1; ++k1) {
                    const BigFloat ck = bf_pow_si(Yl, k1) / bf_factorial(k1);
                    int small_j = 0;
                    for (int j = 0; j < jmax; ++j) {
                        const BigFloat cj = bf_pow_si(G * psi_e, j) / bf_factorial(j);
                        BigFloat inner(0.0);
                        for (int p = 0; p <= n2 + k1; ++p) {
                            const long g = p - n2 - 1 - j;
                            BigFloat gd = bf_gamma_upper(BigFloat(static_cast<double>(g)), c * psi_e);
                            if (finite) gd -= bf_gamma_upper(BigFloat(static_cast<double>(g)), c * x1);
                            const double sgn = ((n2 + k1 - p) % 2 == 0) ? 1.0 : -1.0;
                            inner += bf_binomial(n2 + k1, p) * BigFloat(sgn) *
                                     bf_pow_si(psi_e, n2 + k1 - p) * bf_pow_si(c, -g) * gd;
                        }
                        const BigFloat contrib = C1 * ck * cj * psi_e * bf_pow_si(psi_l, n2 + 1) *
                                                 bf_exp(-G) * bf_pow_si(T, -n2 - k1 - 1) *
                                                 bf_exp(Gl) * inner;
                        total += contrib;
                        if (bf_abs(contrib) <= BigFloat(1e-30) * bf_max(bf_abs(total), BigFloat(1e-280))) {
                            if (++small_j >= 2 && j >= 3) break;
                        } else {
                            small_j = 0;
                        }
                    }
                }
            }
        }
    } else {  // Le < Ll : substitute t = eve SINR kernel; T < 0
        const BigFloat aT = -T;
        const bool finite = ytop < Le * (1.0 - 1e-15);
        BigFloat t_y(0.0);
        if (finite) t_y = BigFloat(ytop) / (psi_e - theta_e * BigFloat(ytop));
        const BigFloat Gp = Yl * psi_e / T;  // negative
        const BigFloat c = Ye / aT;
        BigFloat x1(0.0);
        if (finite) x1 = psi_l + aT * t_y;
        for (int n1 = 0; n1 < sl.ms; ++n1) {
            for (int n2 = 0; n2 < se.ms; ++n2) {
                const BigFloat C1 = sl.lam * (se.lam / se.gbar) * bf_binomial(sl.ms - 1, n1) *
                                    bf_binomial(se.ms - 1, n2) * bf_pow_si(sl.delta, n1) /
                                    bf_pow_si(sl.v, n1 + 1) * bf_pow_si(se.delta / se.gbar, n2) /
                                    bf_factorial(n2);
                for (int k1 = 0; k1 <= n1; ++k1) {
                    const BigFloat ck = bf_pow_si(Yl, k1) / bf_factorial(k1);
                    int small_j = 0;
                    for (int j = 0; j < jmax; ++j) {
                        const BigFloat cj = bf_pow_si(-Gp * psi_l, j) / bf_factorial(j);
                        BigFloat inner(0.0);
                        for (int p = 0; p <= n2 + k1; ++p) {
                            const long g = p - k1 - j + 1;
                            BigFloat gd = bf_gamma_upper(BigFloat(static_cast<double>(g)), c * psi_l);
                            if (finite) gd -= bf_gamma_upper(BigFloat(static_cast<double>(g)), c * x1);
                            const double sgn = ((n2 + k1 - p) % 2 == 0) ? 1.0 : -1.0;
                            inner += bf_binomial(n2 + k1, p) * BigFloat(sgn) *
                                     bf_pow_si(psi_l, n2 + k1 - p) * bf_pow_si(c, -g) * gd;
                        }
                        const BigFloat contrib = C1 * ck * cj * bf_pow_si(psi_e, k1) * bf_exp(Gp) *
                                                 bf_pow_si(aT, -n2 - k1 - 1) *
                                                 bf_exp(-Ye * psi_l / T) * inner;
                        total += contrib;
                        if (bf_abs(contrib) <= BigFloat(1e-30) * bf_max(bf_abs(total), BigFloat(1e-280))) {
                            if (++small_j >= 2 && j >= 3) break;
                        } else {
                            small_j = 0;
                        }
                    }
                }
            }
        }
    }
    return total;
}

// ---------------- K(phi) ----------------

namespace {
// tail integral ∫_phi^∞ F1(y) f1e(y) dy with the exact F1 = gg_cdf^K
double k_tail_quad(const channel::TurbulenceParams& legit, int K,
                   const channel::TurbulenceParams& eve, double phi) {
    auto f = [&](double y) {
        return std::pow(channel::gg_cdf(y, legit), K) * channel::gg_pdf(y, eve);
    };
    std::vector<double> pts = {phi, 2.0 * phi, 10.0 * phi};
    if (eve.mu > phi) pts.push_back(eve.mu);
    if (10.0 * eve.mu > phi) pts.push_back(10.0 * eve.mu);
    double last = pts.front();
    for (double p : pts) last = std::max(last, p);
    double total = quad::integrate_pts(f, pts, 1e-13, 1e-9);
    total += quad::integrate_to_inf(f, last, 1e-13, 1e-9);
    return total;
}
}  // namespace

KPhiResult k_phi(const ScTerms& terms, const channel::TurbulenceParams& legit, int K,
                 const channel::TurbulenceParams& eve, double phi, const SeriesControl& ctrl) {
    ScopedPrecision sp(std::max<long>(terms.bits, 320));
    const double F1phi = eval_sc_terms(terms, phi).to_double();
    const double F1e_phi = channel::gg_cdf(phi, eve);
    const double base = 1.0 - F1phi * F1e_phi;
    const double tail_q = k_tail_quad(legit, K, eve, phi);

    // H1 (asymptotic) and H2 (finite-interval, exact) series
    double aeve = eve.alpha, beve = eve.beta, xeve = eve.xi2;
    separate_gg_exponents(aeve, beve, xeve);
    const double ups_e = xeve * aeve * beve / (eve.mu * (xeve + 1.0));
    const BigFloat Pe(xeve / (std::tgamma(aeve) * std::tgamma(beve)));

    // H1 = Pe Σ c Υ1^ρ Γ(αe+ρ)Γ(βe+ρ) / (Υe^ρ (ξe²+ρ))
    BigFloat h1(0.0);
    {
        const BigFloat ratio(terms.ups_abs / ups_e);
        const BigFloat lnr = bf_log(ratio);
        for (const auto& g : terms.groups) {
            BigFloat rp = bf_exp(BigFloat(g.base) * lnr);
            for (int l = 0; l < static_cast<int>(g.coeff.size()); ++l) {
                const double rho = g.base + l;
                h1 += g.coeff[l] * rp * bf_gamma(BigFloat(aeve + rho)) *
                      bf_gamma(BigFloat(beve + rho)) / BigFloat(xeve + rho);
                rp *= ratio;
            }
        }
        h1 *= Pe;
    }

    // H2 = Pe Σ_terms c Υ1^ρ Σ_fams b_t Υe^t φ^{ρ+t}/(ρ+t)
    BigFloat h2(0.0);
    {
        const int lmax_e = sc_lmax_needed(1, ups_e * phi);
        const PdfFamilies pf = pdf_families(aeve, beve, xeve, lmax_e);
        // collect (b_coeff·Υe^t·φ^t, t)
        std::vector<std::pair<BigFloat, double>> fams;
        const BigFloat wphi(ups_e * phi);
        const BigFloat lnw = bf_log(wphi);
        fams.emplace_back(pf.b0 * bf_exp(BigFloat(xeve) * lnw), xeve);
        BigFloat wa = bf_exp(BigFloat(aeve) * lnw), wb = bf_exp(BigFloat(beve) * lnw);
        for (int l = 0; l <= lmax_e; ++l) {
            fams.emplace_back(pf.b2[l] * wa, aeve + l);
            fams.emplace_back(pf.b3[l] * wb, beve + l);
            wa *= wphi;
            wb *= wphi;
        }
        const BigFloat w1(terms.ups_abs * phi);
        const BigFloat lnw1 = bf_log(w1);
        for (const auto& g : terms.groups) {
            BigFloat w1p = bf_exp(BigFloat(g.base) * lnw1);
            for (int l = 0; l < static_cast<int>(g.coeff.size()); ++l) {
                const double rho = g.base + l;
                BigFloat inner(0.0);
                for (const auto& [bc, t] : fams) inner += bc / BigFloat(rho + t);
                h2 += g.coeff[l] * w1p * inner;
                w1p *= w1;
            }
        }
        h2 *= Pe;
    }

    const double series_tail = (h1 - h2).to_double();
    KPhiResult out;
    if (std::isfinite(series_tail) &&
        std::abs(series_tail - tail_q) <= 1e-8 * std::max(std::abs(tail_q), 1e-30)) {
        out.value = base - series_tail;
        out.fallback_quadrature = false;
    } else {
        out.value = base - tail_q;
        out.fallback_quadrature = true;
    }
    if (ctrl.report) ctrl.report->fallback_quadrature |= out.fallback_quadrature;
    return out;
}

// ---------------- W (ZF cases 2 and 3) ----------------

BigFloat w_series(const ScTerms& terms, const channel::TurbulenceParams& eve, const SrBig& sl,
                  const SrBig& se, const BigFloat& psi, const BigFloat& theta, double gth,
                  int qmax) {
    const BigFloat Ye = se.v / se.gbar;
    const BigFloat L = psi / theta;
    const BigFloat x0 = theta * (BigFloat(1.0) - BigFloat(gth) / L);
    const BigFloat z = x0 / theta;  // 1 - gth/L
    const BigFloat w0 = Ye / x0;

    const auto wP = jzf_weights(sl, se, psi, theta, 60);

    // Ghat(q) = Σ_P w(P)·[Γ(P,w0) - w0^{q+1} Γ(P-q-1,w0)]/(q+1)
    std::map<long, BigFloat> gcache;
    auto GammaU = [&](long m) -> const BigFloat& {
        auto it = gcache.find(m);
        if (it == gcache.end()) it = gcache.emplace(m, upper_gamma(m, w0)).first;
        return it->second;
    };
    std::vector<BigFloat> Ghat(qmax);
    for (int q = 0; q < qmax; ++q) {
        BigFloat s(0.0);
        BigFloat w0q = bf_pow_si(w0, q + 1);
        for (const auto& [P, wp] : wP) s += wp * (GammaU(P) - w0q * GammaU(P - q - 1)) / BigFloat(q + 1);
        Ghat[q] = std::move(s);
    }

    // eve CDF-kernel families at Υe·(...)
    double aeve = eve.alpha, beve = eve.beta, xeve = eve.xi2;
    separate_gg_exponents(aeve, beve, xeve);
    const double ups_e = xeve * aeve * beve / (eve.mu * (xeve + 1.0));
    const BigFloat Pe(xeve / (std::tgamma(aeve) * std::tgamma(beve)));
    const int lmax_e = sc_lmax_needed(1, ups_e * L.to_double());
    const CdfFamilies cf = cdf_families(aeve, beve, xeve, lmax_e);
    std::vector<std::pair<BigFloat, double>> fams;
    fams.emplace_back(cf.a0, xeve);
    for (int l = 0; l <= lmax_e; ++l) {
        fams.emplace_back(cf.a2[l], aeve + l);
        fams.emplace_back(cf.a3[l], beve + l);
    }

    const BigFloat lnL = bf_log(L);
    const BigFloat ups_e_b(ups_e);
    const BigFloat ln_ups_e = bf_log(ups_e_b);
    const BigFloat ups1_b(terms.ups_abs);
    const BigFloat ln_ups1 = bf_log(ups1_b);

    BigFloat total(0.0);
    for (const auto& g : terms.groups) {
        for (int l = 0; l < static_cast<int>(g.coeff.size()); ++l) {
            const double rho = g.base + l;
            if (g.coeff[l].is_zero()) continue;
            const BigFloat c = g.coeff[l] * bf_exp(BigFloat(rho) * ln_ups1);
            BigFloat inner(0.0);
            for (const auto& [at, t] : fams) {
                const double g0 = rho + t;
                // qsum = Σ_q (1-g0)_q / q! · z^q · Ghat(q)
                BigFloat qsum(0.0), poch(1.0), zq(1.0);
                for (int q = 0; q < qmax; ++q) {
                    if (q > 0) {
                        poch *= BigFloat(q - g0);
                        zq *= z;
                    }
                    const BigFloat term = poch / bf_factorial(q) * zq * Ghat[q];
                    qsum += term;
                    if (q > 4 && bf_abs(term) <= BigFloat(1e-30) * bf_abs(qsum)) break;
                }
                inner += at * bf_exp(BigFloat(t) * ln_ups_e) * bf_exp(BigFloat(g0) * lnL) *
                         (x0 / theta) * qsum;
            }
            total += c * BigFloat(rho) * Pe * inner;
        }
    }
    return total;
}

double w_quad(const channel::TurbulenceParams& legit, int K, const channel::TurbulenceParams& eve,
              const SrBig& sl, const SrBig& se, const BigFloat& psi, const BigFloat& theta,
              double gth) {
    const BigFloat Ye = se.v / se.gbar;
    const double L = (psi / theta).to_double();
    const auto wP = jzf_weights(sl, se, psi, theta);

    auto jdiff = [&](double y) {
        const BigFloat warg = Ye * (BigFloat(y) / (psi - theta * BigFloat(y)) + BigFloat(1.0) / theta);
        BigFloat s(0.0);
        for (const auto& [P, wp] : wP) s += wp * upper_gamma(P, warg);
        return s.to_double();
    };
    auto f = [&](double y) {
        // exact SC pdf (the truncated residue pdf diverges near L for large ΥL)
        const double f1 = K * channel::gg_pdf(y, legit) * std::pow(channel::gg_cdf(y, legit), K - 1);
        return f1 * channel::gg_cdf(y, eve) * jdiff(y);
    };
    std::vector<double> pts = {gth, std::min(2.0 * gth, L), std::min(10.0 * gth, L), L};
    return quad::integrate_pts(f, pts, 1e-13, 1e-8);
}

}  // namespace satsec::detail
