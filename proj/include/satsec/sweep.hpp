// sweep.hpp — parameter sweeps over the four IP engines, figure presets, and
// deterministic CSV emission.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satsec/config.hpp"

namespace satsec::sweep {

enum class Engine { ClosedForm, QuadratureReference, MonteCarlo, Asymptotic };

const char* to_string(Engine e);
Engine engine_from_string(const std::string& name);  // cf|quad|mc|asym (+ long names)

struct SweepPoint {
    std::string swept_param;
    double value = 0.0;
    config::RunConfig cfg;
};

struct SweepSpec {
    std::string name;
    std::vector<SweepPoint> points;
    std::vector<Engine> engines;
};

// A single-point "sweep" over the config as given (the default when no preset
// is selected).
SweepSpec single_point(const config::RunConfig& base);

std::vector<std::string> preset_names();
SweepSpec make_preset(const std::string& name, const config::RunConfig& base);

struct SweepRow {
    std::string swept_param;
    double value = 0.0;
    Engine engine = Engine::ClosedForm;
    double ip = 0.0;
    double std_error = 0.0;
    bool has_std_error = false;
    std::string case_fired;
    int series_terms_max = 0;
    bool truncated = false;
    double runtime_ms = 0.0;
    bool ok = true;
    std::string error;  // message when !ok; ip is NaN then
};

struct SweepOptions {
    std::uint64_t seed = 12345;
    std::uint64_t mc_samples = 200000;
    bool timings = false;  // populate runtime_ms in the CSV (off by default so
                           // equal-seed runs are byte-identical)
    int num_threads = 0;
};

// One row per point x engine, in input order; per-row failures are captured
// in the row, never aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& opts);

// CSV (UTF-8, LF), shortest round-trip number formatting.
std::string emit_csv(const std::vector<SweepRow>& rows, bool timings);

}  // namespace satsec::sweep
