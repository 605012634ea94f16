// sc_series.hpp — internal residue-series machinery shared by sc_cdf and the
// secrecy closed forms: coefficient families of the Gamma-Gamma(+PE) CDF/PDF
// kernels and the multinomial K-th-power (selection combining) expansion.
#pragma once

#include <utility>
#include <vector>

#include "satsec/bigfloat.hpp"
#include "satsec/channel.hpp"

namespace satsec::detail {

// Deterministic exponent separation (documented rule): when alpha-beta,
// alpha-xi2, or beta-xi2 is within 1e-6 of an integer, beta += 1e-5; a
// residual 1e-8 ladder covers structurally integer-spaced inputs.
void separate_gg_exponents(double& alpha, double& beta, double& xi2);

// CDF kernel of one branch: G(w) = a0 w^{xi2} + Σ_l a2[l] w^{alpha+l} + Σ_l a3[l] w^{beta+l}
// (kernel excludes the normalization P; w = Upsilon·z/mu).
struct CdfFamilies {
    BigFloat a0;
    std::vector<BigFloat> a2, a3;
};
CdfFamilies cdf_families(double alpha, double beta, double xi2, int lmax);

// PDF kernel analog: G(w) = b0 w^{xi2} + Σ_l b2[l] w^{alpha+l} + Σ_l b3[l] w^{beta+l};
// the pdf itself is P/z times this kernel.
struct PdfFamilies {
    BigFloat b0;
    std::vector<BigFloat> b2, b3;
};
PdfFamilies pdf_families(double alpha, double beta, double xi2, int lmax);

// F_{gamma1}(z) = Σ_groups Σ_l coeff[l] · w^{base+l}, w = ups_abs·z,
// ups_abs = xi2·alpha·beta / (mu·(xi2+1)).
struct TermGroup {
    double base;                  // h1·xi2 + h2·alpha + h3·beta
    BigFloat base_bf;             // same, formed in extended precision: the
                                  // double rounding of e.g. alpha+beta breaks
                                  // the cross-group cancellation at large w
    std::vector<BigFloat> coeff;  // index l = 0..lmax
};
struct ScTerms {
    std::vector<TermGroup> groups;
    double ups_abs = 0.0;
    int lmax = 0;
    long bits = 256;  // precision the coefficients were built at
};

// Build the K-th-power expansion (iterated convolution of the family series;
// the printed m·a0 recursion is numerically unstable). Must run under
// ScopedPrecision(bits) chosen for the largest w to be evaluated.
ScTerms build_sc_terms(const channel::TurbulenceParams& p, int K, int lmax);

// Evaluate Σ c·w^{base+l} at w = ups_abs·z (call under sufficient precision).
BigFloat eval_sc_terms(const ScTerms& t, double z);

// Precision/truncation heuristics for a target maximum w = ups_abs·z_max.
long sc_bits_needed(int K, double wmax);
int sc_lmax_needed(int K, double wmax);

}  // namespace satsec::detail
