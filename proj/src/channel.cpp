// channel.cpp — distributions, beam geometry, and precoding scalars.
#include "satsec/channel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iostream>

#include "satsec/sc_series.hpp"
#include "satsec/specfun.hpp"

namespace satsec::channel {

namespace {
constexpr double kLightSpeed = 299792458.0;
constexpr double kBoltzmann = 1.380649e-23;

// Beyond this Meijer-G argument the Gamma-Gamma tail mass is < 1e-40
// (exp(-(q-p)·w^{1/(q-p)}) decay); short-circuit to the limit value.
constexpr double kGgArgCutoff = 3.0e4;

SeriesControl gg_ctrl(double w) {
    SeriesControl c = default_series_control();
    c.cross_check = false;  // validated against the contour backend in tests
    c.max_terms = std::max(c.max_terms, static_cast<int>(3.5 * std::sqrt(w)) + 80);
    return c;
}
}  // namespace

void FsoUplinkProfile::validate() const {
    if (!(satellite_altitude > ogs_altitude) || ogs_altitude < 0.0)
        throw DomainError("FsoUplinkProfile: requires d > h0 >= 0");
    if (detection_order != 1 && detection_order != 2)
        throw UnsupportedParameterError("FsoUplinkProfile: detection_order must be 1 or 2");
    if (std::abs(omega_l + omega_e - 1.0) > 1e-12 || omega_l <= 0.0 || omega_e <= 0.0)
        throw DomainError("FsoUplinkProfile: omega_l + omega_e must equal 1, both in (0,1)");
    if (num_apertures < 1) throw DomainError("FsoUplinkProfile: K >= 1 required");
}

void TurbulenceParams::validate() const {
    if (!(alpha > 0.0 && beta > 0.0 && xi2 > 0.0 && mu > 0.0))
        throw DomainError("TurbulenceParams: alpha, beta, xi2, mu must be > 0");
    if (detection_order != 1 && detection_order != 2)
        throw UnsupportedParameterError("TurbulenceParams: detection_order must be 1 or 2");
}

double TurbulenceParams::upsilon() const { return xi2 * alpha * beta / (xi2 + 1.0); }
double TurbulenceParams::norm_p() const {
    return xi2 / (std::tgamma(alpha) * std::tgamma(beta));
}

void RfGeometry::validate() const {
    if (num_beams < 1 || frequency <= 0 || noise_temperature <= 0 || bandwidth <= 0 ||
        tx_gain <= 0 || rx_gain_legit <= 0 || rx_gain_eve <= 0 || slant_range <= 0 ||
        cell_diameter <= 0 || half_power_angle <= 0)
        throw DomainError("RfGeometry: all physical fields must be positive");
}

void ShadowedRicianParams::validate() const {
    if (!(b > 0.0) || m_s < 1 || omega < 0.0 || !(gamma_bar > 0.0))
        throw DomainError("ShadowedRicianParams: requires b > 0, m_s >= 1, omega >= 0, gamma_bar > 0");
}

double ShadowedRicianParams::lambda() const {
    return (1.0 / (2.0 * b)) * std::pow(2.0 * b * m_s / (2.0 * b * m_s + omega), m_s);
}
double ShadowedRicianParams::delta() const {
    return omega / (2.0 * b * (2.0 * b * m_s + omega));
}

// ---------- Gamma-Gamma + pointing errors ----------

double gg_pdf(double z, const TurbulenceParams& p) {
    p.validate();
    if (!(z > 0.0)) throw DomainError("gg_pdf: z must be > 0");
    const double r = p.detection_order;
    // perturb integer-spaced exponents once, up front, so the prefactor, the
    // argument scale, and the kernel all see the same parameters
    double a = p.alpha, b = p.beta, x = p.xi2;
    detail::separate_gg_exponents(a, b, x);
    const double ups = x * a * b / (x + 1.0);
    const double w = ups * std::pow(z / p.mu, 1.0 / r);
    if (w > kGgArgCutoff) return 0.0;
    specfun::MeijerGParams g;
    g.a_back = {x + 1.0};
    g.b_front = {x, a, b};
    const double gv = specfun::meijer_g_residue(g, w, gg_ctrl(w));
    return x / (std::tgamma(a) * std::tgamma(b)) / (r * z) * gv;
}

double gg_cdf(double z, const TurbulenceParams& p) {
    p.validate();
    if (z <= 0.0) return 0.0;
    const int r = p.detection_order;
    double a = p.alpha, b = p.beta, x = p.xi2;
    detail::separate_gg_exponents(a, b, x);
    const double ups = x * a * b / (x + 1.0);
    const double w = std::pow(ups, r) * z / (std::pow(r, 2.0 * r) * p.mu);
    if (w > kGgArgCutoff) return 1.0;
    specfun::MeijerGParams g;
    g.a_front = {1.0};
    for (int i = 1; i <= r; ++i) g.a_back.push_back((x + i) / r);
    for (int i = 0; i < r; ++i) {
        g.b_front.push_back((x + i) / r);
        g.b_front.push_back((a + i) / r);
        g.b_front.push_back((b + i) / r);
    }
    g.b_back = {0.0};
    const double pref = std::pow(2.0 * M_PI, 1.0 - r) *
                        (x / (std::tgamma(a) * std::tgamma(b))) / std::pow(r, 2.0 - a - b);
    const double gv = specfun::meijer_g_residue(g, w, gg_ctrl(w));
    return std::clamp(pref * gv, 0.0, 1.0);
}

// ---------- beam gain and V matrix ----------

double beam_gain(double angle, double phi_3db) {
    if (!(phi_3db > 0.0)) throw DomainError("beam_gain: phi_3db must be > 0");
    const double t = 2.07123 * std::sin(angle) / phi_3db;
    if (std::abs(t) < 1e-6) return 1.0;  // boresight limit J1/(2t) -> 1/4, 36 J3/t^3 -> 3/4
    const double v = specfun::bessel_j(1, t) / (2.0 * t) +
                     36.0 * specfun::bessel_j(3, t) / (t * t * t);
    return v * v;
}

Matrix build_v_matrix(const RfGeometry& geom, NodeClass node_class) {
    geom.validate();
    const int N = geom.num_beams;
    const double gr = node_class == NodeClass::Legitimate ? geom.rx_gain_legit : geom.rx_gain_eve;
    const double off = node_class == NodeClass::Legitimate ? geom.offset_legit : geom.offset_eve;
    const double phi = geom.cell_diameter / geom.slant_range;  // beam-width angle
    const double pref = kLightSpeed /
                        (4.0 * M_PI * geom.frequency * geom.slant_range *
                         std::sqrt(kBoltzmann * geom.noise_temperature * geom.bandwidth));
    Matrix V(N, std::vector<double>(N, 0.0));
    bool dominant = true;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            const double ang = phi * (i - j) + (j >= i ? off : -off);
            const double a = beam_gain(ang, geom.half_power_angle);
            V[i - 1][j - 1] = pref * std::sqrt(geom.tx_gain * gr * a);
        }
        for (int j = 0; j < N; ++j)
            if (j != i - 1 && V[i - 1][j] >= V[i - 1][i - 1]) dominant = false;
    }
    if (!dominant)
        std::cerr << "satsec warning: V matrix diagonal is not strictly dominant for this geometry\n";
    return V;
}

PrecodingContext make_precoding_context(const Matrix& v_legit, const Matrix& v_eve,
                                        double p_sat, int N) {
    if (!(p_sat > 0.0)) throw DomainError("make_precoding_context: p_sat must be > 0");
    Eigen::MatrixXd Vl(N, N), Ve(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Vl(i, j) = v_legit[i][j];
            Ve(i, j) = v_eve[i][j];
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Vl);
    const double cond = svd.singularValues()(0) / svd.singularValues()(N - 1);
    if (!(cond < 1e12))
        throw ModelError("make_precoding_context: v_legit near-singular (cond >= 1e12)");
    const Eigen::MatrixXd A = Vl.inverse();
    const double trace = (Vl * Vl.transpose()).inverse().trace();

    PrecodingContext ctx;
    ctx.v_legit = v_legit;
    ctx.v_eve = v_eve;
    ctx.p_sat = p_sat;
    ctx.trace_inv = trace;
    ctx.power_norm = p_sat / (N * trace);
    ctx.a_inv.assign(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) ctx.a_inv[i][j] = A(i, j);

    ctx.psi.resize(N);
    ctx.theta.resize(N);
    ctx.psi_legit.resize(N);
    ctx.theta_legit.resize(N);
    ctx.psi_eve.resize(N);
    ctx.theta_eve.resize(N);
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += Ve(i, j) * A(j, i);
        ctx.psi[i] = s * s;
        double t = 0.0;
        for (int m = 0; m < N; ++m) {
            if (m == i) continue;
            double sm = 0.0;
            for (int j = 0; j < N; ++j) sm += Ve(i, j) * A(j, m);
            t += sm;
        }
        ctx.theta[i] = t * t;

        ctx.psi_legit[i] = Vl(i, i) * Vl(i, i);
        ctx.psi_eve[i] = Ve(i, i) * Ve(i, i);
        double tl = 0.0, te = 0.0;
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            tl += Vl(i, j);
            te += Ve(i, j);
        }
        ctx.theta_legit[i] = tl * tl;
        ctx.theta_eve[i] = te * te;
    }
    return ctx;
}

// ---------- shadowed-Rician ----------

double sr_pdf(double z, const ShadowedRicianParams& p) {
    p.validate();
    if (z <= 0.0) return 0.0;
    const double x = p.delta() * z / p.gamma_bar;
    // 1F1(m_s; 1; x) = e^x * poly(x); fold e^x into the decay factor so the
    // far tail underflows to 0 instead of producing inf * 0
    const int m = p.m_s - 1;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= (-m + k) / ((1.0 + k) * (k + 1.0)) * (-x);
        sum += term;
    }
    return p.lambda() / p.gamma_bar * std::exp((p.delta() - p.rho()) * z / p.gamma_bar) * sum;
}

double sr_cdf(double z, const ShadowedRicianParams& p) {
    p.validate();
    if (z <= 0.0) return 0.0;
    const double x = p.v() * z / p.gamma_bar;
    double acc = 0.0;
    double fact = 1.0;  // n!
    for (int n = 0; n < p.m_s; ++n) {
        if (n > 0) fact *= n;
        const double c = std::exp(std::lgamma(p.m_s) - std::lgamma(n + 1.0) -
                                  std::lgamma(p.m_s - n));  // C(m_s-1, n)
        acc += c * std::pow(p.delta(), n) / (std::pow(p.v(), n + 1) * fact) *
               specfun::lower_incomplete_gamma(n + 1.0, x);
    }
    return std::clamp(p.lambda() * acc, 0.0, 1.0);
}

// ---------- SINR CDFs ----------

namespace {
double sinr_cdf_impl(double z, double psi, double theta, const ShadowedRicianParams& p) {
    if (z <= 0.0) return 0.0;
    if (theta > 0.0 && z >= psi / theta) return 1.0;
    return sr_cdf(z / (psi - theta * z), p);
}
}  // namespace

double sinr_cdf_zf(double z, const PrecodingContext& ctx, const ShadowedRicianParams& p_eve, int i) {
    return sinr_cdf_impl(z, ctx.psi[i], ctx.theta[i], p_eve);
}

double sinr_cdf_nzf(double z, const PrecodingContext& ctx, const ShadowedRicianParams& p_node,
                    int i, NodeClass node_class) {
    if (node_class == NodeClass::Legitimate)
        return sinr_cdf_impl(z, ctx.psi_legit[i], ctx.theta_legit[i], p_node);
    return sinr_cdf_impl(z, ctx.psi_eve[i], ctx.theta_eve[i], p_node);
}

}  // namespace satsec::channel
