// satsec — intercept-probability sweeps for the hybrid FSO/RF satellite link.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satsec/series_control.hpp"
#include "satsec/sweep.hpp"

namespace {

void apply_env_overrides() {
    if (const char* mt = std::getenv("SATSEC_MAX_TERMS")) {
        try {
            const long v = std::stol(mt);
            if (v < 1) throw std::invalid_argument(mt);
            satsec::set_default_max_terms(static_cast<int>(v));
        } catch (const std::exception&) {
            std::cerr << "satsec: invalid SATSEC_MAX_TERMS value '" << mt << "'\n";
            std::exit(2);
        }
    }
}

std::vector<satsec::sweep::Engine> parse_engines(const std::string& csv) {
    std::vector<satsec::sweep::Engine> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(satsec::sweep::engine_from_string(tok));
    if (out.empty()) throw satsec::ConfigError("--engines: no engines given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    apply_env_overrides();

    CLI::App app{"satsec: physical-layer intercept probability of a hybrid "
                 "FSO-uplink / RF-downlink satellite system"};
    app.require_subcommand(1);

    std::string config_path, preset, out_path, engines_csv;
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 0;
    bool timings = false;
    int threads = 0;
    bool seed_given = false, mc_given = false;

    auto* run = app.add_subcommand("run", "run a sweep and emit CSV");
    run->add_option("--config", config_path, "config file (.ini or .json)")->required();
    run->add_option("--preset", preset, "figure preset sweep");
    run->add_option("--seed", seed, "master Monte Carlo seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run->add_option("--out", out_path, "output CSV path (default: stdout)");
    run->add_option("--engines", engines_csv, "comma-separated engines: cf,quad,mc,asym");
    run->add_option("--mc-samples", mc_samples, "Monte Carlo trials per row")
        ->each([&](const std::string&) { mc_given = true; });
    run->add_flag("--timings", timings, "populate the runtime_ms column");
    run->add_option("--threads", threads, "Monte Carlo worker threads (0 = auto)");

    auto* validate = app.add_subcommand("validate", "parse and validate a config file");
    validate->add_option("--config", config_path, "config file (.ini or .json)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = satsec::config::load_config(config_path);

        if (validate->parsed()) {
            cfg.build_scenario().validate();
            std::cout << "ok\n";
            return 0;
        }

        auto spec = preset.empty() ? satsec::sweep::single_point(cfg)
                                   : satsec::sweep::make_preset(preset, cfg);
        if (!engines_csv.empty()) spec.engines = parse_engines(engines_csv);

        satsec::sweep::SweepOptions opts;
        opts.seed = seed_given ? seed : cfg.seed;
        opts.mc_samples = mc_given ? mc_samples : cfg.mc_samples;
        opts.timings = timings;
        opts.num_threads = threads;

        const auto rows = satsec::sweep::run_sweep(spec, opts);
        const std::string csv = satsec::sweep::emit_csv(rows, timings);
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw satsec::ConfigError("cannot open output file '" + out_path + "'");
            out << csv;
        }

        bool all_ok = true;
        for (const auto& r : rows)
            if (!r.ok) {
                all_ok = false;
                std::cerr << "satsec: row (" << r.swept_param << "=" << r.value << ", "
                          << satsec::sweep::to_string(r.engine) << ") failed: " << r.error << "\n";
            }
        return all_ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "satsec: " << e.what() << "\n";
        return 2;
    }
}
