// montecarlo.hpp — counter-based Monte Carlo engine. One Philox4x32-10
// substream per trial: results are bit-identical for a given seed regardless
// of how trials are partitioned across threads.
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "satsec/channel.hpp"
#include "satsec/secrecy.hpp"

namespace satsec::mc {

// Philox4x32-10 keyed by the master seed; the counter carries
// (block, substream), giving a period well above 2^128 overall.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t substream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(substream) {}

    double next_uniform();  // (0, 1)
    double next_normal();   // standard normal (Box-Muller)
    double next_gamma(double shape, double scale);  // Marsaglia-Tsang

  private:
    std::uint32_t next_u32();
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int idx_ = 4;
    bool has_normal_ = false;
    double cached_normal_ = 0.0;
};

// One draw of the uplink SNR (Gamma-Gamma turbulence x pointing error,
// detection order r = 1 or 2), calibrated analytically to p.mu.
double sample_gg_pe(TrialRng& rng, const channel::TurbulenceParams& p);

// One draw of the downlink SNR gamma_bar * ((x_R + A)^2 + x_I^2),
// x ~ N(0, b) per dimension, A^2 ~ Gamma(m_s, Omega/m_s).
double sample_shadowed_rician(TrialRng& rng, const channel::ShadowedRicianParams& p);

struct McEstimate {
    double ip = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

// Intercept probability estimate; num_threads = 0 picks hardware concurrency.
McEstimate estimate_ip(const secrecy::SecrecyScenario& s, std::uint64_t n, std::uint64_t seed,
                       int num_threads = 0);

// Probability of each of the six exclusive orderings whose union is the
// non-intercept event, plus the direct estimate from the same trials.
struct McEventBreakdown {
    std::array<double, 6> event_prob{};
    std::array<double, 6> event_se{};
    McEstimate direct;
};
McEventBreakdown estimate_ip_events(const secrecy::SecrecyScenario& s, std::uint64_t n,
                                    std::uint64_t seed, int num_threads = 0);

// Sorted (x, F_n(x)) pairs with F_n the right-continuous step height at x.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

}  // namespace satsec::mc
