// quadrature.hpp — adaptive Gauss-Kronrod (15-point) integration used as the
// arbiter oracle throughout the library. Header-only, reentrant.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace satsec::quad {

namespace detail {
// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule, on [-1,1].
inline constexpr double kron_x[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
inline constexpr double kron_w[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
inline constexpr double gauss_w[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <class F>
inline void gk15(const F& f, double a, double b, double& result, double& err) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double rk = 0.0, rg = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kron_x[i]);
        rk += kron_w[i] * fx;
        if (i % 2 == 1) rg += gauss_w[i / 2] * fx;
    }
    result = rk * h;
    err = std::abs((rk - rg) * h);
}

template <class F>
inline double adapt(const F& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    double r, e;
    gk15(f, a, b, r, e);
    if (depth <= 0 || e <= abs_tol || e <= rel_tol * std::abs(r)) return r;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1) +
           adapt(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1);
}
}  // namespace detail

// Adaptive integral over a finite interval.
template <class F>
inline double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                        double rel_tol = 1e-9, int max_depth = 28) {
    if (!(b > a)) return 0.0;
    return detail::adapt(f, a, b, abs_tol, rel_tol, max_depth);
}

// Integral over [a, ∞) via x = a + t/(1-t).
template <class F>
inline double integrate_to_inf(const F& f, double a, double abs_tol = 1e-12,
                               double rel_tol = 1e-9, int max_depth = 28) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return detail::adapt(g, 0.0, 1.0 - 1e-14, abs_tol, rel_tol, max_depth);
}

// Piecewise integral through user-supplied breakpoints (sorted internally).
template <class F>
inline double integrate_pts(const F& f, std::vector<double> pts, double abs_tol = 1e-12,
                            double rel_tol = 1e-9, int max_depth = 28) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], abs_tol, rel_tol, max_depth);
    return total;
}

}  // namespace satsec::quad
