// bigfloat.hpp — thin RAII wrapper over MPFR for the cancellation-heavy series.
//
// Precision is a thread-local setting consumed at construction time; wrap a
// computation in ScopedPrecision to run it at a chosen precision. All
// operations are pure value semantics; safe for concurrent use across threads
// (each thread has its own precision state, mpfr_t values are never shared).
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace satsec {

class BigFloat {
  public:
    BigFloat() {
        mpfr_init2(v_, prec());
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double d) {
        mpfr_init2(v_, prec());
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigFloat(int i) {
        mpfr_init2(v_, prec());
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    BigFloat(long i) {
        mpfr_init2(v_, prec());
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static mpfr_prec_t prec();
    static void set_prec(mpfr_prec_t p);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    std::string str(int digits = 20) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    // arithmetic
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  private:
    mpfr_t v_;
};

// RAII precision scope (thread-local).
class ScopedPrecision {
  public:
    explicit ScopedPrecision(mpfr_prec_t bits) : old_(BigFloat::prec()) { BigFloat::set_prec(bits); }
    ~ScopedPrecision() { BigFloat::set_prec(old_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    mpfr_prec_t old_;
};

// elementary / special functions on BigFloat
BigFloat bf_abs(const BigFloat& x);
BigFloat bf_exp(const BigFloat& x);
BigFloat bf_log(const BigFloat& x);
BigFloat bf_sqrt(const BigFloat& x);
BigFloat bf_pow(const BigFloat& b, const BigFloat& e);   // b > 0 or e integer
BigFloat bf_pow_si(const BigFloat& b, long e);
BigFloat bf_gamma(const BigFloat& x);                    // any non-pole real
BigFloat bf_gamma_upper(const BigFloat& a, const BigFloat& x);  // Γ(a,x), any real a, x > 0
BigFloat bf_ei(const BigFloat& x);                       // exponential integral Ei
BigFloat bf_factorial(unsigned long n);
BigFloat bf_binomial(unsigned long n, unsigned long k);
BigFloat bf_max(const BigFloat& a, const BigFloat& b);

}  // namespace satsec
