// bigfloat.cpp — MPFR wrapper implementation.
#include "satsec/bigfloat.hpp"

#include <cmath>
#include <vector>

#include "satsec/series_control.hpp"

namespace satsec {

namespace {
thread_local mpfr_prec_t t_prec = 256;
}

mpfr_prec_t BigFloat::prec() { return t_prec; }
void BigFloat::set_prec(mpfr_prec_t p) { t_prec = p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }

std::string BigFloat::str(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return buf;
}

BigFloat bf_abs(const BigFloat& x) {
    BigFloat r;
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_exp(const BigFloat& x) {
    BigFloat r;
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_log(const BigFloat& x) {
    BigFloat r;
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_sqrt(const BigFloat& x) {
    BigFloat r;
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_pow(const BigFloat& b, const BigFloat& e) {
    BigFloat r;
    mpfr_pow(r.raw(), b.raw(), e.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_pow_si(const BigFloat& b, long e) {
    BigFloat r;
    mpfr_pow_si(r.raw(), b.raw(), e, MPFR_RNDN);
    return r;
}
BigFloat bf_gamma(const BigFloat& x) {
    BigFloat r;
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_gamma_upper(const BigFloat& a, const BigFloat& x) {
    // mpfr_gamma_inc sums the ascending series, whose working precision (and
    // runtime) grows linearly with x; far in the tail the classical continued
    // fraction converges in a handful of terms instead
    const double xd = x.to_double(), ad = a.to_double();
    if (xd > 100.0 && xd > 1.3 * std::abs(ad) + 50.0) {
        ScopedPrecision sp(BigFloat::prec() + 64);
        const BigFloat eps = bf_pow_si(BigFloat(2.0), -static_cast<long>(BigFloat::prec()));
        const BigFloat tiny(1e-300);
        // modified Lentz on Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - ...))
        BigFloat b = x + BigFloat(1.0) - a;
        BigFloat c = BigFloat(1.0) / tiny;
        BigFloat d = BigFloat(1.0) / b;
        BigFloat h = d;
        for (long i = 1; i < 100000; ++i) {
            const BigFloat an = BigFloat(-i) * (BigFloat(i) - a);
            b += BigFloat(2.0);
            d = an * d + b;
            if (bf_abs(d) < tiny) d = tiny;
            c = b + an / c;
            if (bf_abs(c) < tiny) c = tiny;
            d = BigFloat(1.0) / d;
            const BigFloat del = d * c;
            h *= del;
            if (bf_abs(del - BigFloat(1.0)) < eps) break;
        }
        return bf_exp(a * bf_log(x) - x) * h;
    }
    BigFloat r;
    mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_ei(const BigFloat& x) {
    // mpfr_eint computes Ei(x) for x > 0 and -E1(-x) = Ei(x) for x < 0.
    BigFloat r;
    mpfr_eint(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigFloat bf_factorial(unsigned long n) {
    BigFloat r;
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}
BigFloat bf_binomial(unsigned long n, unsigned long k) {
    if (k > n) return BigFloat(0.0);
    BigFloat r = bf_factorial(n) / (bf_factorial(k) * bf_factorial(n - k));
    return r;
}
BigFloat bf_max(const BigFloat& a, const BigFloat& b) { return a > b ? a : b; }

namespace {
int g_default_max_terms = 500;
}
int default_max_terms() { return g_default_max_terms; }
void set_default_max_terms(int n) {
    if (n > 0) g_default_max_terms = n;
}
SeriesControl default_series_control() {
    SeriesControl c;
    c.max_terms = g_default_max_terms;
    return c;
}

}  // namespace satsec
