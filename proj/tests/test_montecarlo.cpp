// Unit tests for the counter-based Monte Carlo engine: reproducibility and
// partition independence, sampler distributions against the analytic CDFs,
// and the intercept estimators.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "satsec/config.hpp"
#include "satsec/montecarlo.hpp"

using namespace satsec;
using namespace satsec::mc;

namespace {
secrecy::SecrecyScenario reference_scenario() {
    config::RunConfig c;
    c.ps_over_sigma1_db = 30.0;
    c.ps_over_sigmae_db = 30.0;
    c.gamma_th_db = 20.0;
    c.psat_db = 10.0;
    return c.build_scenario();
}

// sup |F_n - F| over a fixed evaluation grid (lower bound of the exact
// statistic; adequate with a dense grid and cheap when F is expensive)
double ks_on_grid(std::vector<double> samples, const std::vector<double>& grid,
                  const std::function<double(double)>& F) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (double x : grid) {
        const auto it = std::upper_bound(samples.begin(), samples.end(), x);
        const double fn = static_cast<double>(it - samples.begin()) / n;
        d = std::max(d, std::abs(fn - F(x)));
    }
    return d;
}
}  // namespace

TEST_CASE("trial RNG is reproducible and substreams are distinct") {
    TrialRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool all_equal_c = true, all_equal_d = true;
    for (int i = 0; i < 64; ++i) {
        const double ua = a.next_uniform();
        CHECK(ua == b.next_uniform());
        CHECK(ua > 0.0);
        CHECK(ua < 1.0);
        all_equal_c = all_equal_c && (ua == c.next_uniform());
        all_equal_d = all_equal_d && (ua == d.next_uniform());
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform and normal moments") {
    TrialRng rng(2718, 0);
    const int n = 200000;
    double su = 0.0, su2 = 0.0, sn = 0.0, sn2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        su += u;
        su2 += u * u;
        const double z = rng.next_normal();
        sn += z;
        sn2 += z * z;
    }
    const double mu_u = su / n, var_u = su2 / n - mu_u * mu_u;
    CHECK(std::abs(mu_u - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(var_u - 1.0 / 12.0) < 0.002);
    const double mu_n = sn / n, var_n = sn2 / n - mu_n * mu_n;
    CHECK(std::abs(mu_n) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var_n - 1.0) < 0.02);
}

TEST_CASE("gamma sampler moments") {
    for (double shape : {0.5, 1.0, 3.7}) {
        for (double scale : {1.0, 2.5}) {
            TrialRng rng(99, static_cast<std::uint64_t>(shape * 10 + scale));
            const int n = 200000;
            double s = 0.0, s2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = rng.next_gamma(shape, scale);
                CHECK(x > 0.0);
                s += x;
                s2 += x * x;
            }
            const double mean = s / n;
            const double want_mean = shape * scale;
            const double sd_mean = scale * std::sqrt(shape / n);
            CHECK(std::abs(mean - want_mean) < 5.0 * sd_mean);
            const double var = s2 / n - mean * mean;
            CHECK(std::abs(var - shape * scale * scale) < 0.05 * shape * scale * scale + 5.0 * sd_mean);
        }
    }
    TrialRng rng(1, 1);
    CHECK_THROWS_AS(rng.next_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rng.next_gamma(1.0, -1.0), DomainError);
}

TEST_CASE("uplink sampler matches the analytic cdf (grid Kolmogorov-Smirnov)") {
    const channel::TurbulenceParams p{4.3, 2.6, 1.8, 700.0, 1};
    const std::size_t n = 200000;
    std::vector<double> s;
    s.reserve(n);
    double mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        TrialRng rng(314159, t);
        const double g = sample_gg_pe(rng, p);
        s.push_back(g);
        mean += g;
    }
    mean /= static_cast<double>(n);
    // analytic calibration E[gamma] = mu for coherent detection
    CHECK(std::abs(mean - p.mu) < 0.02 * p.mu);

    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(std::pow(10.0, -1.0 + 5.0 * i / 200.0));
    const double d = ks_on_grid(s, grid, [&](double z) { return channel::gg_cdf(z, p); });
    CHECK(d <= 0.005);
}

TEST_CASE("uplink sampler matches the analytic cdf, quadratic detection") {
    channel::TurbulenceParams p{4.1, 2.3, 1.1, 300.0, 2};
    const std::size_t n = 100000;
    std::vector<double> s;
    s.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        TrialRng rng(2711, t);
        s.push_back(sample_gg_pe(rng, p));
    }
    std::vector<double> grid;
    for (int i = 0; i <= 150; ++i) grid.push_back(std::pow(10.0, -2.0 + 6.0 * i / 150.0));
    const double d = ks_on_grid(s, grid, [&](double z) { return channel::gg_cdf(z, p); });
    CHECK(d <= 0.007);
}

TEST_CASE("downlink sampler matches the analytic cdf (exact Kolmogorov-Smirnov)") {
    const channel::ShadowedRicianParams p{1.4, 2, 3.0, 778.6439524};
    const std::size_t n = 100000;
    std::vector<double> s;
    s.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        TrialRng rng(161803, t);
        s.push_back(sample_shadowed_rician(rng, p));
    }
    std::sort(s.begin(), s.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fx = channel::sr_cdf(s[i], p);
        d = std::max(d, std::abs(fx - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(fx - static_cast<double>(i) / n));
    }
    CHECK(d <= 0.007);
}

TEST_CASE("intercept estimate is identical for any thread partition") {
    const secrecy::SecrecyScenario s = reference_scenario();
    const McEstimate e1 = estimate_ip(s, 20000, 777, 1);
    for (int threads : {2, 3, 8}) {
        const McEstimate ek = estimate_ip(s, 20000, 777, threads);
        CHECK(ek.ip == e1.ip);
        CHECK(ek.std_error == e1.std_error);
        CHECK(ek.n == e1.n);
    }
    // a different seed gives a different (but close) estimate
    const McEstimate e2 = estimate_ip(s, 20000, 778, 2);
    CHECK(e2.ip != e1.ip);
}

TEST_CASE("intercept estimate agrees with the closed form within 3 standard errors") {
    const secrecy::SecrecyScenario s = reference_scenario();
    const double closed = secrecy::intercept_probability(s).ip;
    const McEstimate e = estimate_ip(s, 200000, 12345, 0);
    CHECK(std::abs(e.ip - closed) <= 3.0 * e.std_error);
    CHECK(e.std_error < 0.002);
    CHECK(e.n == 200000);
}

TEST_CASE("six-event breakdown is exhaustive") {
    const secrecy::SecrecyScenario s = reference_scenario();
    const McEventBreakdown b = estimate_ip_events(s, 200000, 31337, 0);
    double sum = 0.0, var = 0.0;
    for (int i = 0; i < 6; ++i) {
        CHECK(b.event_prob[i] >= 0.0);
        sum += b.event_prob[i];
        var += b.event_se[i] * b.event_se[i];
    }
    // the six orderings partition the non-intercept event
    const double secure = 1.0 - b.direct.ip;
    CHECK(std::abs(sum - secure) <= 3.0 * std::sqrt(var + b.direct.std_error * b.direct.std_error));
    CHECK(b.direct.n == 200000);
}

TEST_CASE("empirical cdf collapses ties and ends at one") {
    const auto cdf = empirical_cdf({3.0, 1.0, 2.0, 2.0, 5.0});
    REQUIRE(cdf.size() == 4);
    CHECK(cdf[0] == std::pair<double, double>{1.0, 0.2});
    CHECK(cdf[1] == std::pair<double, double>{2.0, 0.6});
    CHECK(cdf[2] == std::pair<double, double>{3.0, 0.8});
    CHECK(cdf[3] == std::pair<double, double>{5.0, 1.0});
}
