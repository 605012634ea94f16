// montecarlo.cpp — Philox4x32-10 engine, channel samplers, and the intercept
// estimators (plain and six-event breakdown).
#include "satsec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <thread>

namespace satsec::mc {

namespace {
constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32),
                        lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32),
                        lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}
}  // namespace

std::uint32_t TrialRng::next_u32() {
    if (idx_ >= 4) {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        buf_ = philox10(ctr, key_);
        ++block_;
        idx_ = 0;
    }
    return buf_[idx_++];
}

double TrialRng::next_uniform() {
    const std::uint64_t hi = next_u32(), lo = next_u32();
    const std::uint64_t u = (hi << 32) | lo;
    // 53 significant bits, centered in the bin: strictly inside (0, 1)
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

double TrialRng::next_normal() {
    if (has_normal_) {
        has_normal_ = false;
        return cached_normal_;
    }
    const double u1 = next_uniform(), u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(t);
    has_normal_ = true;
    return r * std::cos(t);
}

double TrialRng::next_gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) throw DomainError("next_gamma: shape, scale > 0 required");
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(next_uniform(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v * scale;
    }
}

double sample_gg_pe(TrialRng& rng, const channel::TurbulenceParams& p) {
    p.validate();
    const double ia = rng.next_gamma(p.alpha, 1.0 / p.alpha) * rng.next_gamma(p.beta, 1.0 / p.beta);
    const double ip = std::pow(rng.next_uniform(), 1.0 / p.xi2);
    const double i = ia * ip;  // E[i] = xi2/(xi2+1)
    if (p.detection_order == 1) return p.mu * (p.xi2 + 1.0) / p.xi2 * i;
    // r = 2: mu_2 is referenced to the squared mean intensity, E[i]^2
    const double ei = p.xi2 / (p.xi2 + 1.0);
    return p.mu * i * i / (ei * ei);
}

double sample_shadowed_rician(TrialRng& rng, const channel::ShadowedRicianParams& p) {
    p.validate();
    const double sb = std::sqrt(p.b);
    const double xr = sb * rng.next_normal();
    const double xi = sb * rng.next_normal();
    double a = 0.0;
    if (p.omega > 0.0)
        a = std::sqrt(rng.next_gamma(static_cast<double>(p.m_s), p.omega / p.m_s));
    const double w = (xr + a) * (xr + a) + xi * xi;
    return p.gamma_bar * w;
}

namespace {

struct TrialDraw {
    double g1, g1e, gl, ge;
};

TrialDraw draw_trial(TrialRng& rng, const secrecy::SecrecyScenario& s) {
    TrialDraw d{};
    d.g1 = 0.0;
    for (int k = 0; k < s.num_apertures; ++k)
        d.g1 = std::max(d.g1, sample_gg_pe(rng, s.fso_legit));
    d.g1e = sample_gg_pe(rng, s.fso_eve);
    const double wl = sample_shadowed_rician(rng, s.rf_legit);
    const double we = sample_shadowed_rician(rng, s.rf_eve);
    const int i = s.node_index;
    if (s.mode == secrecy::Mode::ZF) {
        d.gl = wl;
        d.ge = s.precoding.psi[i] * we / (s.precoding.theta[i] * we + 1.0);
    } else {
        d.gl = s.precoding.psi_legit[i] * wl / (s.precoding.theta_legit[i] * wl + 1.0);
        d.ge = s.precoding.psi_eve[i] * we / (s.precoding.theta_eve[i] * we + 1.0);
    }
    return d;
}

struct Tally {
    std::uint64_t secure = 0;
    std::array<std::uint64_t, 6> events{};
};

Tally run_range(const secrecy::SecrecyScenario& s, std::uint64_t seed, std::uint64_t begin,
                std::uint64_t end, bool with_events) {
    Tally t;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        TrialRng rng(seed, trial);
        const TrialDraw d = draw_trial(rng, s);
        const auto c = secrecy::secrecy_capacity_components(d.g1, d.g1e, d.gl, d.ge);
        const bool secure = d.g1 > s.gamma_th && c.cs > 0.0;
        if (secure) ++t.secure;
        if (with_events && d.g1 > s.gamma_th && d.gl > d.ge) {
            const double gth = s.gamma_th;
            const double a = d.g1e, b = d.ge;
            int idx = -1;
            if (d.g1 > a && a > b && b > gth) idx = 0;        // g1 > g1e > ge2 > gth
            else if (d.g1 > b && b > a && a > gth) idx = 1;   // g1 > ge2 > g1e > gth
            else if (gth > b && b > a) idx = 2;               // g1 > gth > ge2 > g1e
            else if (gth > a && a > b) idx = 3;               // g1 > gth > g1e > ge2
            else if (d.g1 > b && b > gth && gth > a) idx = 4; // g1 > ge2 > gth > g1e
            else if (d.g1 > a && a > gth && gth > b) idx = 5; // g1 > g1e > gth > ge2
            if (idx >= 0) ++t.events[idx];
        }
    }
    return t;
}

Tally run_parallel(const secrecy::SecrecyScenario& s, std::uint64_t n, std::uint64_t seed,
                   int num_threads, bool with_events) {
    s.validate();
    if (n < 1000)
        std::cerr << "[satsec] warning: Monte Carlo sample count " << n
                  << " < 1000; the estimate will be very noisy\n";
    int nt = num_threads > 0 ? num_threads
                             : static_cast<int>(std::thread::hardware_concurrency());
    if (nt < 1) nt = 1;
    nt = static_cast<int>(std::min<std::uint64_t>(nt, std::max<std::uint64_t>(n, 1)));
    std::vector<Tally> parts(nt);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (n + nt - 1) / nt;
    for (int w = 0; w < nt; ++w) {
        const std::uint64_t b = std::min<std::uint64_t>(w * chunk, n);
        const std::uint64_t e = std::min<std::uint64_t>(b + chunk, n);
        threads.emplace_back(
            [&, w, b, e]() { parts[w] = run_range(s, seed, b, e, with_events); });
    }
    for (auto& th : threads) th.join();
    Tally total;
    for (const auto& p : parts) {
        total.secure += p.secure;
        for (int i = 0; i < 6; ++i) total.events[i] += p.events[i];
    }
    return total;
}

McEstimate to_estimate(std::uint64_t secure, std::uint64_t n) {
    McEstimate e;
    e.n = n;
    const double ps = n ? static_cast<double>(secure) / n : 0.0;
    e.ip = 1.0 - ps;
    e.std_error = n ? std::sqrt(std::max(ps * (1.0 - ps), 1e-12) / n) : 0.0;
    return e;
}

}  // namespace

McEstimate estimate_ip(const secrecy::SecrecyScenario& s, std::uint64_t n, std::uint64_t seed,
                       int num_threads) {
    const Tally t = run_parallel(s, n, seed, num_threads, false);
    return to_estimate(t.secure, n);
}

McEventBreakdown estimate_ip_events(const secrecy::SecrecyScenario& s, std::uint64_t n,
                                    std::uint64_t seed, int num_threads) {
    const Tally t = run_parallel(s, n, seed, num_threads, true);
    McEventBreakdown out;
    out.direct = to_estimate(t.secure, n);
    for (int i = 0; i < 6; ++i) {
        const double p = n ? static_cast<double>(t.events[i]) / n : 0.0;
        out.event_prob[i] = p;
        out.event_se[i] = n ? std::sqrt(std::max(p * (1.0 - p), 1e-12) / n) : 0.0;
    }
    return out;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // collapse ties to the highest step
        if (!out.empty() && out.back().first == samples[i])
            out.back().second = static_cast<double>(i + 1) / n;
        else
            out.emplace_back(samples[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

}  // namespace satsec::mc
