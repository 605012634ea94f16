// secrecy.cpp — intercept-probability assembly: the J and K integrals, the
// closed-form case dispatch, and the permanent 2-D quadrature reference.
#include "satsec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "satsec/quadrature.hpp"
#include "satsec/sc_series.hpp"
#include "satsec/secrecy_series.hpp"

namespace satsec::secrecy {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// shared cache of the selection-combining expansions (parameters rarely change
// within a sweep; the downlink side varies instead)
std::shared_ptr<const detail::ScTerms> get_sc_terms(const channel::TurbulenceParams& p, int K,
                                                    double zmax) {
    struct Entry {
        double alpha, beta, xi2, mu, wmax;
        int K;
        std::shared_ptr<const detail::ScTerms> terms;
    };
    static std::mutex mu_cache;
    static std::vector<Entry> cache;

    const double w = p.upsilon() / p.mu * zmax;
    {
        std::lock_guard<std::mutex> lk(mu_cache);
        for (const auto& e : cache)
            if (e.alpha == p.alpha && e.beta == p.beta && e.xi2 == p.xi2 && e.mu == p.mu &&
                e.K == K && w <= e.wmax)
                return e.terms;
    }
    const double wbuild = std::max(w * 1.5, 25.0);
    const long bits = detail::sc_bits_needed(K, wbuild);
    const int lmax = detail::sc_lmax_needed(K, wbuild);
    ScopedPrecision sp(bits);
    auto built = std::make_shared<detail::ScTerms>(detail::build_sc_terms(p, K, lmax));
    std::lock_guard<std::mutex> lk(mu_cache);
    if (cache.size() > 32) cache.erase(cache.begin());
    cache.push_back({p.alpha, p.beta, p.xi2, p.mu, wbuild, K, built});
    return built;
}

struct SinrScalars {
    double psi_e, theta_e;  // eavesdropper SINR kernel
    double psi_l, theta_l;  // legit SINR kernel (NZF); unused for ZF
};

SinrScalars scalars_of(const SecrecyScenario& s) {
    const int i = s.node_index;
    if (s.mode == Mode::ZF)
        return {s.precoding.psi[i], s.precoding.theta[i], 0.0, 0.0};
    return {s.precoding.psi_eve[i], s.precoding.theta_eve[i], s.precoding.psi_legit[i],
            s.precoding.theta_legit[i]};
}
}  // namespace

const char* to_string(IpCase c) {
    switch (c) {
        case IpCase::ZF_case1: return "zf_case1";
        case IpCase::ZF_case2: return "zf_case2";
        case IpCase::ZF_case3: return "zf_case3";
        case IpCase::NZF: return "nzf";
    }
    return "unknown";
}

void SecrecyScenario::validate() const {
    fso_legit.validate();
    fso_eve.validate();
    rf_legit.validate();
    rf_eve.validate();
    if (num_apertures < 1) throw DomainError("scenario: num_apertures >= 1 required");
    if (gamma_th <= 0.0) throw DomainError("scenario: gamma_th > 0 required");
    const size_t n = (mode == Mode::ZF) ? precoding.psi.size() : precoding.psi_legit.size();
    if (node_index < 0 || static_cast<size_t>(node_index) >= n)
        throw DomainError("scenario: node_index out of range");
}

// ---------------- J ----------------

double j_integral(double y, const SecrecyScenario& s, const SeriesControl& ctrl) {
    s.validate();
    (void)ctrl;
    const SinrScalars sc = scalars_of(s);
    ScopedPrecision sp(320);
    const detail::SrBig sl(s.rf_legit), se(s.rf_eve);
    if (s.mode == Mode::ZF)
        return detail::jzf_series(sl, se, BigFloat(sc.psi_e), BigFloat(sc.theta_e), y).to_double();
    return detail::jnzf_series(sl, se, BigFloat(sc.psi_l), BigFloat(sc.theta_l),
                               BigFloat(sc.psi_e), BigFloat(sc.theta_e), y)
        .to_double();
}

double j_integral_quadrature(double y, const SecrecyScenario& s) {
    s.validate();
    const SinrScalars sc = scalars_of(s);
    const double le = sc.psi_e / sc.theta_e;
    const double top_lim = (s.mode == Mode::ZF) ? le : std::min(le, sc.psi_l / sc.theta_l);
    const double top = std::min(y, top_lim);
    if (top <= 0.0) return 0.0;
    auto f = [&](double z) {
        if (z <= 0.0 || z >= le) return 0.0;
        const double den = sc.psi_e - sc.theta_e * z;
        const double fe = channel::sr_pdf(z / den, s.rf_eve) * sc.psi_e / (den * den);
        double fc;
        if (s.mode == Mode::ZF) {
            fc = 1.0 - channel::sr_cdf(z, s.rf_legit);
        } else {
            if (z >= sc.psi_l / sc.theta_l) return 0.0;
            fc = 1.0 - channel::sr_cdf(z / (sc.psi_l - sc.theta_l * z), s.rf_legit);
        }
        return fe * fc;
    };
    return quad::integrate_pts(f, {0.0, 0.5 * top, 0.999999 * top, top}, 1e-13, 1e-10);
}

// ---------------- K ----------------

double k_integral(double phi, const SecrecyScenario& s, const SeriesControl& ctrl) {
    s.validate();
    if (phi < 0.0) throw DomainError("k_integral: phi >= 0 required");
    if (s.fso_legit.detection_order != 1 || s.fso_eve.detection_order != 1)
        throw UnsupportedParameterError("k_integral: closed form requires detection_order r = 1");
    auto terms = get_sc_terms(s.fso_legit, s.num_apertures, std::max(phi, 1.0));
    const auto r = detail::k_phi(*terms, s.fso_legit, s.num_apertures, s.fso_eve, phi, ctrl);
    return r.value;
}

double k_integral_quadrature(double phi, const SecrecyScenario& s) {
    s.validate();
    const int K = s.num_apertures;
    auto f = [&](double y) {
        return K * channel::gg_pdf(y, s.fso_legit) *
               std::pow(channel::gg_cdf(y, s.fso_legit), K - 1) * channel::gg_cdf(y, s.fso_eve);
    };
    const double mu1 = s.fso_legit.mu;
    std::vector<double> pts = {phi, 2.0 * phi, 10.0 * phi};
    if (mu1 > phi) pts.push_back(mu1);
    if (10.0 * mu1 > phi) pts.push_back(10.0 * mu1);
    double last = pts.front();
    for (double p : pts) last = std::max(last, p);
    return quad::integrate_pts(f, pts, 1e-13, 1e-9) + quad::integrate_to_inf(f, last, 1e-13, 1e-9);
}

// ---------------- closed-form IP ----------------

IpResult intercept_probability(const SecrecyScenario& s, const SeriesControl& ctrl) {
    s.validate();
    if (s.fso_legit.detection_order != 1 || s.fso_eve.detection_order != 1)
        throw UnsupportedParameterError(
            "intercept_probability: closed form requires detection_order r = 1");

    const SinrScalars sc = scalars_of(s);
    const double gth = s.gamma_th;
    IpResult out;

    auto terms = get_sc_terms(s.fso_legit, s.num_apertures, std::max(gth, 1.0));
    const auto kg = detail::k_phi(*terms, s.fso_legit, s.num_apertures, s.fso_eve, gth, ctrl);
    out.diagnostics.k_fallback_quadrature = kg.fallback_quadrature;
    out.diagnostics.series_terms_max =
        (terms->lmax + 1) * static_cast<int>(terms->groups.size());

    ScopedPrecision sp(320);
    const detail::SrBig sl(s.rf_legit), se(s.rf_eve);

    double ip;
    if (s.mode == Mode::ZF) {
        const BigFloat psi(sc.psi_e), theta(sc.theta_e);
        const double L = sc.psi_e / sc.theta_e;
        const double jl = detail::jzf_series(sl, se, psi, theta, kInf).to_double();
        ip = 1.0 - jl * kg.value;
        out.case_fired = IpCase::ZF_case1;
        // a saturation level within 1e-12 (relative) of the threshold is
        // treated as the boundary, i.e. case 1
        const bool tie = std::abs(L - gth) < 1e-12 * gth;
        if (L > gth && !tie) {
            const double z = 1.0 - gth / L;
            double w;
            if (250.0 * std::log(z) < std::log(1e-30)) {
                w = detail::w_series(*terms, s.fso_eve, sl, se, psi, theta, gth).to_double();
            } else {
                w = detail::w_quad(s.fso_legit, s.num_apertures, s.fso_eve, sl, se, psi, theta,
                                   gth);
                out.diagnostics.w_fallback_quadrature = true;
            }
            ip += w;
            out.case_fired = (L < 2.0 * gth) ? IpCase::ZF_case2 : IpCase::ZF_case3;
        }
    } else {
        const double le = sc.psi_e / sc.theta_e;
        if (le >= gth)
            throw UnsupportedRegimeError(
                "intercept_probability: non-ZF closed form requires the eavesdropper saturation "
                "level below gamma_th; use the Monte Carlo engine for this regime");
        const double j = detail::jnzf_series(sl, se, BigFloat(sc.psi_l), BigFloat(sc.theta_l),
                                             BigFloat(sc.psi_e), BigFloat(sc.theta_e), kInf)
                             .to_double();
        ip = 1.0 - j * kg.value;
        out.case_fired = IpCase::NZF;
    }

    out.diagnostics.ip_preclamp = ip;
    if (ctrl.report) {
        out.diagnostics.truncated = ctrl.report->truncated;
        ctrl.report->terms_used = std::max(ctrl.report->terms_used, out.diagnostics.series_terms_max);
    }
    out.ip = std::clamp(ip, 0.0, 1.0);
    return out;
}

// ---------------- 2-D quadrature reference ----------------

double intercept_probability_quadrature(const SecrecyScenario& s) {
    s.validate();
    const SinrScalars sc = scalars_of(s);
    const double gth = s.gamma_th;
    const int K = s.num_apertures;
    const double jtop = (s.mode == Mode::ZF)
                            ? sc.psi_e / sc.theta_e
                            : std::min(sc.psi_e / sc.theta_e, sc.psi_l / sc.theta_l);
    const double j_full = j_integral_quadrature(jtop, s);

    auto f = [&](double y) {
        const double f1 =
            K * channel::gg_pdf(y, s.fso_legit) * std::pow(channel::gg_cdf(y, s.fso_legit), K - 1);
        if (f1 == 0.0) return 0.0;
        const double jy = (y >= jtop) ? j_full : j_integral_quadrature(y, s);
        return f1 * channel::gg_cdf(y, s.fso_eve) * jy;
    };

    const double mu1 = s.fso_legit.mu, mue = s.fso_eve.mu;
    std::vector<double> pts = {gth};
    for (double x : {jtop, 2.0 * gth, 10.0 * gth, 0.01 * mue, mue, 10.0 * mue, 0.01 * mu1,
                     0.1 * mu1, mu1, 10.0 * mu1, 100.0 * mu1})
        if (x > gth) pts.push_back(x);
    double last = pts.front();
    for (double p : pts) last = std::max(last, p);
    const double total =
        quad::integrate_pts(f, pts, 1e-12, 1e-9) + quad::integrate_to_inf(f, last, 1e-12, 1e-9);
    return 1.0 - total;
}

// ---------------- secrecy capacity ----------------

CapacityComponents secrecy_capacity_components(double g1, double g1e, double gl, double ge) {
    if (g1 < 0.0 || g1e < 0.0 || gl < 0.0 || ge < 0.0)
        throw DomainError("secrecy_capacity_components: SNRs must be non-negative");
    CapacityComponents c;
    c.cs_hop1 = std::max(0.0, std::log2((1.0 + g1) / (1.0 + g1e)));
    c.cs_hop2 = std::max(0.0, std::log2((1.0 + gl) / (1.0 + ge)));
    c.cs_cross = std::max(0.0, std::log2((1.0 + g1) / (1.0 + ge)));
    c.cs = std::min({c.cs_hop1, c.cs_hop2, c.cs_cross});
    return c;
}

}  // namespace satsec::secrecy
