// specfun.hpp — scalar special functions and the dual-backend Meijer G engine.
//
// All functions are pure and thread-safe.
#pragma once

#include <vector>

#include "satsec/series_control.hpp"

namespace satsec::specfun {

// ln Γ(x), x > 0, relative error ≤ 1e-13.
double ln_gamma(double x);

// γ(a, x) = ∫₀ˣ t^{a-1} e^{-t} dt, a > 0, x ≥ 0; absolute error ≤ 1e-12·Γ(a).
double lower_incomplete_gamma(double a, double x);

// Γ(a, x) = ∫ₓ^∞ t^{a-1} e^{-t} dt for any real a (including a ≤ 0), x > 0.
double upper_incomplete_gamma(double a, double x);

// (x)ₙ = x(x+1)···(x+n-1), computed by the product form.
double pochhammer(double x, int n);

// Bessel function of the first kind, integer order ≥ 0 (orders 1 and 3 are the
// contract; all non-negative integer orders supported). |error| ≤ 1e-12 for |x| ≤ 50.
double bessel_j(int order, double x);

// ₁F₁(a; b; z) for positive integers a, b via the finite
// polynomial-times-exponential form (requires a ≥ b); the direct convergent
// series otherwise.
double kummer_1f1(int a, int b, double z);

// ₂F₁(a, b; c; z): series for |z| < 1, Pfaff / linear connection formulas for
// z ≤ -1, principal value for z > 1.
double gauss_2f1(double a, double b, double c, double z);

// Exponential integral Ei(x), x ≠ 0 (principal value for x > 0).
double exp_integral_ei(double x);

// ---- Meijer G ----
//
// G^{m,n}_{p,q}( z | a₁..aₙ ; aₙ₊₁..a_p // b₁..b_m ; b_m₊₁..b_q )
// a_front has n entries, a_back p-n, b_front m, b_back q-m.
struct MeijerGParams {
    std::vector<double> a_front;  // a₁..aₙ
    std::vector<double> a_back;   // aₙ₊₁..a_p
    std::vector<double> b_front;  // b₁..b_m  (poles summed by the residue backend)
    std::vector<double> b_back;   // b_m₊₁..b_q
};

// Residue-series value (primary backend); when ctrl.cross_check is set, a
// Mellin-Barnes contour integration referee must agree to ctrl.rel_tol·10³.
double meijer_g(const MeijerGParams& p, double z, const SeriesControl& ctrl = default_series_control());

// Individual backends, exposed for the dual-backend invariant tests.
double meijer_g_residue(const MeijerGParams& p, double z, const SeriesControl& ctrl = default_series_control());
double meijer_g_contour(const MeijerGParams& p, double z, double rel_tol = 1e-10);

}  // namespace satsec::specfun
