// sc_series.cpp — residue coefficient families and the selection-combining
// K-th-power expansion, plus the public sc_cdf.
#include "satsec/sc_series.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include "satsec/series_control.hpp"

namespace satsec::detail {

namespace {
bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) < tol; }
}  // namespace

void separate_gg_exponents(double& alpha, double& beta, double& xi2) {
    // identical pairwise rule (and parameter order) to the Meijer-G pole
    // separation, so series expansions and kernel evaluations agree exactly
    double b[3] = {xi2, alpha, beta};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (near_integer(b[i] - b[j], 1e-6)) b[j] += 1e-5;
    bool still = false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (near_integer(b[i] - b[j], 1e-7)) still = true;
    if (still) {
        for (int k = 1; k < 3; ++k) b[k] += static_cast<double>(k) * 1e-8;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (near_integer(b[i] - b[j], 1e-9))
                    throw DegenerateParametersError(
                        "gg series: exponent collision persists after perturbation");
    }
    xi2 = b[0];
    alpha = b[1];
    beta = b[2];
}

CdfFamilies cdf_families(double alpha, double beta, double xi2, int lmax) {
    separate_gg_exponents(alpha, beta, xi2);
    // all exponent differences in extended precision: a double-rounded Gamma
    // argument (~1e-16 relative) times the peak term magnitude would otherwise
    // destroy the large-argument cancellation of the series
    const BigFloat ba(alpha), bb(beta), bx(xi2);
    CdfFamilies f;
    f.a0 = bf_gamma(ba - bx) * bf_gamma(bb - bx) / bx;
    f.a2.resize(lmax + 1);
    f.a3.resize(lmax + 1);
    BigFloat fact(1.0);
    for (int l = 0; l <= lmax; ++l) {
        if (l > 0) fact *= BigFloat(l);
        const BigFloat sgn((l % 2 == 0) ? 1.0 : -1.0);
        const BigFloat bl(l);
        f.a2[l] = sgn * bf_gamma(bb - ba - bl) / (fact * (bx - ba - bl) * (bl + ba));
        f.a3[l] = sgn * bf_gamma(ba - bb - bl) / (fact * (bx - bb - bl) * (bl + bb));
    }
    return f;
}

PdfFamilies pdf_families(double alpha, double beta, double xi2, int lmax) {
    separate_gg_exponents(alpha, beta, xi2);
    const BigFloat ba(alpha), bb(beta), bx(xi2);
    PdfFamilies f;
    f.b0 = bf_gamma(ba - bx) * bf_gamma(bb - bx);
    f.b2.resize(lmax + 1);
    f.b3.resize(lmax + 1);
    BigFloat fact(1.0);
    for (int l = 0; l <= lmax; ++l) {
        if (l > 0) fact *= BigFloat(l);
        const BigFloat sgn((l % 2 == 0) ? 1.0 : -1.0);
        const BigFloat bl(l);
        f.b2[l] = sgn * bf_gamma(bb - ba - bl) / (fact * (bx - ba - bl));
        f.b3[l] = sgn * bf_gamma(ba - bb - bl) / (fact * (bx - bb - bl));
    }
    return f;
}

namespace {

// coefficients of (Σ_l a[l] x^l)^h by iterated convolution (term-exact)
std::vector<BigFloat> power_series(const std::vector<BigFloat>& a, int h, int lmax) {
    std::vector<BigFloat> c(a.begin(), a.begin() + std::min<size_t>(a.size(), lmax + 1));
    c.resize(lmax + 1, BigFloat(0.0));
    for (int step = 1; step < h; ++step) {
        std::vector<BigFloat> nc(lmax + 1, BigFloat(0.0));
        for (int m = 0; m <= lmax; ++m) {
            BigFloat s(0.0);
            for (int j = 0; j <= m; ++j) s += c[j] * a[m - j];
            nc[m] = std::move(s);
        }
        c = std::move(nc);
    }
    return c;
}

std::vector<BigFloat> convolve(const std::vector<BigFloat>& a, const std::vector<BigFloat>& b,
                               int lmax) {
    std::vector<BigFloat> c(lmax + 1, BigFloat(0.0));
    for (int m = 0; m <= lmax; ++m) {
        BigFloat s(0.0);
        for (int j = 0; j <= m; ++j) s += a[j] * b[m - j];
        c[m] = std::move(s);
    }
    return c;
}

}  // namespace

long sc_bits_needed(int K, double wmax) {
    return 256 + static_cast<long>(3.0 * K * std::sqrt(std::max(wmax, 0.0)));
}
int sc_lmax_needed(int K, double wmax) {
    // the K-fold convolution peaks near degree K·sqrt(w); e·K·sqrt(w) plus a
    // flat margin covers the tail to below double roundoff
    return std::min(2000,
                    std::max(60, static_cast<int>(2.8 * K * std::sqrt(std::max(wmax, 0.0))) + 40));
}

ScTerms build_sc_terms(const channel::TurbulenceParams& p, int K, int lmax) {
    if (p.detection_order != 1)
        throw UnsupportedParameterError("sc series: derived for detection_order r = 1 only");
    double alpha = p.alpha, beta = p.beta, xi2 = p.xi2;
    separate_gg_exponents(alpha, beta, xi2);

    ScTerms out;
    out.ups_abs = xi2 * alpha * beta / (p.mu * (xi2 + 1.0));
    out.lmax = lmax;
    out.bits = BigFloat::prec();

    const CdfFamilies fam = cdf_families(alpha, beta, xi2, lmax);
    const BigFloat P(xi2 / (std::tgamma(alpha) * std::tgamma(beta)));
    const BigFloat PK = bf_pow_si(P, K);

    // powers of the two polynomial families, h = 0..K (built incrementally)
    std::vector<std::vector<BigFloat>> pow2(K + 1), pow3(K + 1);
    pow2[1] = power_series(fam.a2, 1, lmax);
    pow3[1] = power_series(fam.a3, 1, lmax);
    for (int h = 2; h <= K; ++h) {
        pow2[h] = convolve(pow2[h - 1], pow2[1], lmax);
        pow3[h] = convolve(pow3[h - 1], pow3[1], lmax);
    }

    for (int h1 = 0; h1 <= K; ++h1) {
        for (int h2 = 0; h2 <= K - h1; ++h2) {
            const int h3 = K - h1 - h2;
            const BigFloat mult = bf_factorial(K) / (bf_factorial(h1) * bf_factorial(h2) * bf_factorial(h3));
            const BigFloat common = PK * mult * bf_pow_si(fam.a0, h1);
            TermGroup g;
            g.base = h1 * xi2 + h2 * alpha + h3 * beta;
            g.base_bf = BigFloat(h1) * BigFloat(xi2) + BigFloat(h2) * BigFloat(alpha) +
                        BigFloat(h3) * BigFloat(beta);
            if (h2 > 0 && h3 > 0)
                g.coeff = convolve(pow2[h2], pow3[h3], lmax);
            else if (h2 > 0)
                g.coeff = pow2[h2];
            else if (h3 > 0)
                g.coeff = pow3[h3];
            else {
                g.coeff.assign(lmax + 1, BigFloat(0.0));
                g.coeff[0] = BigFloat(1.0);
            }
            for (auto& c : g.coeff) c *= common;
            out.groups.push_back(std::move(g));
        }
    }
    return out;
}

BigFloat eval_sc_terms(const ScTerms& t, double z) {
    if (z <= 0.0) return BigFloat(0.0);
    const BigFloat w(t.ups_abs * z);
    const BigFloat lnw = bf_log(w);
    BigFloat sum(0.0);
    for (const auto& g : t.groups) {
        BigFloat wp = bf_exp(g.base_bf * lnw);
        for (int l = 0; l < static_cast<int>(g.coeff.size()); ++l) {
            sum += g.coeff[l] * wp;
            wp *= w;
        }
    }
    return sum;
}

}  // namespace satsec::detail

namespace satsec::channel {

double sc_cdf(double z, const TurbulenceParams& p, int K, const SeriesControl& ctrl) {
    p.validate();
    if (K < 1) throw DomainError("sc_cdf: K >= 1 required");
    if (p.detection_order != 1)
        throw UnsupportedParameterError("sc_cdf: supported for detection_order r = 1 only");
    if (z <= 0.0) return 0.0;

    const double ups_abs = p.upsilon() / p.mu;
    const double w = ups_abs * z;

    // memoize the (expensive) expansion per parameter set; rebuild only when a
    // larger argument needs deeper truncation / more precision
    struct CacheEntry {
        double alpha, beta, xi2, mu, wmax;
        int K;
        std::shared_ptr<const detail::ScTerms> terms;
    };
    static std::mutex mu_cache;
    static std::vector<CacheEntry> cache;

    std::shared_ptr<const detail::ScTerms> terms;
    {
        std::lock_guard<std::mutex> lk(mu_cache);
        for (const auto& e : cache)
            if (e.alpha == p.alpha && e.beta == p.beta && e.xi2 == p.xi2 && e.mu == p.mu &&
                e.K == K && w <= e.wmax) {
                terms = e.terms;
                break;
            }
    }
    if (!terms) {
        const double wbuild = std::max(w * 1.5, 25.0);
        const long bits = detail::sc_bits_needed(K, wbuild);
        const int lmax = detail::sc_lmax_needed(K, wbuild);
        ScopedPrecision sp(bits);
        auto built = std::make_shared<detail::ScTerms>(detail::build_sc_terms(p, K, lmax));
        std::lock_guard<std::mutex> lk(mu_cache);
        if (cache.size() > 32) cache.erase(cache.begin());
        cache.push_back({p.alpha, p.beta, p.xi2, p.mu, wbuild, K, built});
        terms = built;
    }

    ScopedPrecision sp(terms->bits);
    const double v = detail::eval_sc_terms(*terms, z).to_double();
    if (ctrl.report) {
        ctrl.report->terms_used = std::max(
            ctrl.report->terms_used, terms->lmax * static_cast<int>(terms->groups.size()));
    }
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace satsec::channel
