// series_control.hpp — shared truncation control and diagnostics for all series engines.
#pragma once

#include <stdexcept>
#include <string>

namespace satsec {

// Diagnostics filled by series evaluators (never silent truncation).
struct SeriesDiagnostics {
    int terms_used = 0;
    bool truncated = false;            // stopped by max_terms, tail not yet below tol
    bool fallback_quadrature = false;  // a series was abandoned for its quadrature twin
    double tail_estimate = 0.0;        // magnitude of the last computed term

    void merge(const SeriesDiagnostics& o) {
        if (o.terms_used > terms_used) terms_used = o.terms_used;
        truncated = truncated || o.truncated;
        fallback_quadrature = fallback_quadrature || o.fallback_quadrature;
        if (o.tail_estimate > tail_estimate) tail_estimate = o.tail_estimate;
    }
};

// Shared knob set. `cross_check` gates the dual-backend comparison in meijer_g;
// inner secrecy-series loops switch it off after the enclosing series has been
// validated against its quadrature arbiter (the stronger oracle).
struct SeriesControl {
    double rel_tol = 1e-10;
    int max_terms = 500;
    bool cross_check = true;
    SeriesDiagnostics* report = nullptr;
};

// Process-wide default max_terms (overridable via the SATSEC_MAX_TERMS env var,
// applied by the CLI entry point).
int default_max_terms();
void set_default_max_terms(int n);
SeriesControl default_series_control();

// ---- error taxonomy ----
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct UnsupportedParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateParametersError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedRegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Carries a partial value and tail estimate when a series could not converge
// within max_terms.
struct TruncationError : std::runtime_error {
    double partial_value;
    double tail_estimate;
    TruncationError(const std::string& msg, double partial, double tail)
        : std::runtime_error(msg), partial_value(partial), tail_estimate(tail) {}
};
struct BackendMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace satsec
