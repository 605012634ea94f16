// Unit tests for the intercept-probability engines: the J/K building-block
// integrals against their quadrature twins, the closed form against frozen
// references and the 2-D quadrature arbiter, case dispatch, the asymptote,
// and the secrecy-capacity decomposition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satsec/config.hpp"
#include "satsec/secrecy.hpp"

using namespace satsec;
using namespace satsec::secrecy;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

config::RunConfig base_cfg() {
    config::RunConfig c;
    c.ps_over_sigma1_db = 30.0;
    c.ps_over_sigmae_db = 30.0;
    return c;
}

SecrecyScenario make_scenario(int node, bool zf, double gth_db, double psat_db,
                              double off_l = -1.0) {
    config::RunConfig c = base_cfg();
    c.mode = zf ? "zf" : "nzf";
    c.node_index = node;
    c.gamma_th_db = gth_db;
    c.psat_db = psat_db;
    if (off_l > 0.0) c.geometry.offset_legit = off_l;
    return c.build_scenario();
}
}  // namespace

TEST_CASE("closed-form intercept probability matches frozen references") {
    struct Ref {
        int node;
        bool zf;
        double gth_db, psat_db, off_l, expect, tol;
        IpCase want_case;
    };
    const Ref refs[] = {
        {2, true, 20.0, 10.0, -1.0, 0.08101990, 1e-5, IpCase::ZF_case1},
        {2, true, 11.0, 5.0, -1.0, 0.08506221, 1e-5, IpCase::ZF_case2},
        {0, true, 12.0, 5.0, -1.0, 0.09287428, 1e-5, IpCase::ZF_case3},
        {2, false, 20.0, 40.0, 5e-4, 0.0781, 1.5e-3, IpCase::NZF},
        {2, false, 20.0, 20.0, -1.0, 0.99959590, 1e-5, IpCase::NZF},
        {2, true, 20.0, 20.0, 5e-4, 0.54585087, 1e-5, IpCase::ZF_case3},
    };
    for (const auto& r : refs) {
        CAPTURE(r.expect);
        const SecrecyScenario s = make_scenario(r.node, r.zf, r.gth_db, r.psat_db, r.off_l);
        const IpResult res = intercept_probability(s);
        CHECK(rel_err(res.ip, r.expect) < r.tol);
        CHECK(res.case_fired == r.want_case);
        CHECK(res.ip >= 0.0);
        CHECK(res.ip <= 1.0);
        CHECK(res.diagnostics.series_terms_max > 0);
    }
}

TEST_CASE("closed form agrees with the 2-D quadrature reference") {
    const struct {
        int node;
        bool zf;
        double gth_db, psat_db, off_l;
    } cases[] = {
        {2, true, 20.0, 10.0, -1.0},  {2, true, 11.0, 5.0, -1.0},
        {0, true, 12.0, 5.0, -1.0},   {2, false, 20.0, 40.0, 5e-4},
        {2, false, 20.0, 20.0, -1.0}, {2, true, 20.0, 20.0, 5e-4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.gth_db);
        CAPTURE(c.psat_db);
        const SecrecyScenario s = make_scenario(c.node, c.zf, c.gth_db, c.psat_db, c.off_l);
        const double closed = intercept_probability(s).ip;
        const double quad = intercept_probability_quadrature(s);
        CHECK(rel_err(closed, quad) < 1e-3);
    }
}

TEST_CASE("J integral matches its quadrature twin") {
    int probes = 0;
    const struct {
        int node;
        bool zf;
        double gth_db, psat_db, off_l;
    } cases[] = {
        {2, true, 20.0, 10.0, -1.0},
        {2, true, 11.0, 5.0, -1.0},
        {2, false, 20.0, 40.0, 5e-4},
        {2, false, 20.0, 20.0, -1.0},
    };
    for (const auto& c : cases) {
        const SecrecyScenario s = make_scenario(c.node, c.zf, c.gth_db, c.psat_db, c.off_l);
        for (double f : {0.3, 1.0, 3.0, 1e6}) {
            const double y = f * s.gamma_th;
            const double series = j_integral(y, s);
            const double twin = j_integral_quadrature(y, s);
            CAPTURE(c.gth_db);
            CAPTURE(y);
            CHECK(rel_err(series, twin) < 1e-4);
            ++probes;
        }
    }
    CHECK(probes >= 16);
}

TEST_CASE("K integral matches its quadrature twin") {
    int probes = 0;
    const struct {
        int node;
        bool zf;
        double gth_db, psat_db;
    } cases[] = {
        {2, true, 20.0, 10.0},
        {2, true, 11.0, 5.0},
    };
    for (const auto& c : cases) {
        const SecrecyScenario s = make_scenario(c.node, c.zf, c.gth_db, c.psat_db);
        for (double f : {0.3, 1.0, 2.0, 10.0}) {
            const double phi = f * s.gamma_th;
            const double series = k_integral(phi, s);
            const double twin = k_integral_quadrature(phi, s);
            CAPTURE(c.gth_db);
            CAPTURE(phi);
            CHECK(rel_err(series, twin) < 1e-4);
            ++probes;
        }
    }
    CHECK(probes >= 8);
}

TEST_CASE("ZF case dispatch follows the saturation level, with the tie rule") {
    // L = sat_zf(); case 1 for L <= gamma_th, case 2 for gamma_th < L < 2 gamma_th,
    // case 3 for L >= 2 gamma_th
    SecrecyScenario s = make_scenario(2, true, 20.0, 10.0);
    const double L = s.sat_zf();

    s.gamma_th = L * (1.0 + 1e-13);  // inside the 1e-12 tie window
    CHECK(intercept_probability(s).case_fired == IpCase::ZF_case1);
    s.gamma_th = L * 1.5;
    CHECK(intercept_probability(s).case_fired == IpCase::ZF_case1);
    s.gamma_th = L * (1.0 - 1e-6);  // just below: gamma_th < L < 2 gamma_th
    CHECK(intercept_probability(s).case_fired == IpCase::ZF_case2);
    s.gamma_th = L * 0.6;
    CHECK(intercept_probability(s).case_fired == IpCase::ZF_case2);
    s.gamma_th = L * 0.3;  // L > 2 gamma_th
    CHECK(intercept_probability(s).case_fired == IpCase::ZF_case3);
}

TEST_CASE("non-ZF requires the eavesdropper saturation below the threshold") {
    SecrecyScenario s = make_scenario(2, false, 20.0, 20.0);
    REQUIRE(s.sat_eve() < s.gamma_th);
    s.gamma_th = s.sat_eve() * 0.5;
    CHECK_THROWS_AS(intercept_probability(s), UnsupportedRegimeError);
}

TEST_CASE("intercept probability is monotone in the aperture count") {
    double prev = 2.0;
    for (int K : {1, 2, 3, 5}) {
        config::RunConfig c = base_cfg();
        c.gamma_th_db = 20.0;
        c.psat_db = 10.0;
        c.k_apertures = K;
        const double ip = intercept_probability(c.build_scenario()).ip;
        CAPTURE(K);
        CHECK(ip < prev);
        prev = ip;
    }
}

TEST_CASE("high-SNR asymptote: diversity order, slope, and gap") {
    // unit diversity regime: K x_d = 3 * min(xi2, alpha, beta) = 5.4 > 1
    auto cfg_at = [](double psat_db) {
        config::RunConfig c = base_cfg();
        c.gamma_th_db = 20.0;
        c.psat_db = psat_db;
        c.ps_over_sigma1_db = psat_db + 10.0;
        return c;
    };
    const SecrecyScenario s50 = cfg_at(50.0).build_scenario();
    const SecrecyScenario s60 = cfg_at(60.0).build_scenario();
    const double ip50 = intercept_probability(s50).ip;
    const double ip60 = intercept_probability(s60).ip;
    CHECK(rel_err(ip50, 3.897076e-7) < 1e-4);
    CHECK(rel_err(ip60, 3.897437e-8) < 1e-4);

    const AsymptoticResult a = intercept_probability_asymptotic(s60);
    CHECK(a.diversity_order == 1.0);
    CHECK_FALSE(a.ill_conditioned);
    // top-decade slope within 5% of -G_d
    const double slope = (std::log10(ip60) - std::log10(ip50));  // per decade
    CHECK(std::abs(-slope - a.diversity_order) < 0.05 * a.diversity_order);
    // asymptote gap within 10% at the operating point
    CHECK(std::abs(a.ip_asymptote - ip60) <= 0.10 * ip60);

    // fractional diversity and the ill-conditioning flag
    config::RunConfig cf = base_cfg();
    cf.k_apertures = 1;
    cf.xi2_legit = 0.6;
    const AsymptoticResult af = intercept_probability_asymptotic(cf.build_scenario());
    CHECK(af.diversity_order == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_FALSE(af.ill_conditioned);
    cf.xi2_legit = 0.9995;
    const AsymptoticResult ai = intercept_probability_asymptotic(cf.build_scenario());
    CHECK(ai.ill_conditioned);
}

TEST_CASE("secrecy capacity decomposition") {
    const CapacityComponents c = secrecy_capacity_components(100.0, 10.0, 50.0, 5.0);
    CHECK(rel_err(c.cs_hop1, std::log2(101.0 / 11.0)) < 1e-14);
    CHECK(rel_err(c.cs_hop2, std::log2(51.0 / 6.0)) < 1e-14);
    CHECK(rel_err(c.cs_cross, std::log2(101.0 / 6.0)) < 1e-14);
    CHECK(c.cs == std::min({c.cs_hop1, c.cs_hop2, c.cs_cross}));

    // eavesdropper advantage clamps the component at zero
    const CapacityComponents z = secrecy_capacity_components(10.0, 100.0, 5.0, 50.0);
    CHECK(z.cs_hop1 == 0.0);
    CHECK(z.cs_hop2 == 0.0);
    CHECK(z.cs == 0.0);

    CHECK_THROWS_AS(secrecy_capacity_components(-1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("scenario validation") {
    SecrecyScenario s = make_scenario(2, true, 20.0, 10.0);
    CHECK_NOTHROW(s.validate());
    s.num_apertures = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = make_scenario(2, true, 20.0, 10.0);
    s.gamma_th = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}
