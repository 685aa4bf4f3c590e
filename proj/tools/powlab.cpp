// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/cli/config.hpp>
#include <powlab/cli/run.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace powlab::cli;

int main(int argc, char** argv)
{
    CLI::App app{"powlab: proof-of-work incentive simulations"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out_dir;
    bool svg = false;
    bool paper_scale = false;
    bool quiet = false;

    for (const char* kind : {"strongchain", "dag", "feegame", "gametheory"}) {
        auto* sub = app.add_subcommand(kind, std::string("run a ") + kind + " scenario");
        sub->add_option("--config", config_path, "scenario file")->required();
        sub->add_option("--seed", seed, "override the configured seed");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "override output_dir");
        sub->add_flag("--svg", svg, "also render line charts");
        sub->add_flag("--quiet", quiet, "no progress output");
        if (std::string(kind) == "feegame") {
            sub->add_flag("--paper-scale", paper_scale,
                          "100 miners, 10^4 blocks per game, 3*10^5 games (overnight; results not guaranteed)");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }
    const std::string kind = app.get_subcommands().front()->get_name();

    ScenarioConfig cfg;
    try {
        cfg = load_config(config_path);
        if (to_string(cfg.kind) != kind) {
            throw ValidationError("kind: config is `" + to_string(cfg.kind) + "` but `" + kind + "` was requested");
        }
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (paper_scale) apply_paper_scale(cfg);
        cfg.validate();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitValidation;
    }

    RunOptions options;
    options.jobs = jobs;
    options.svg = svg;
    options.log = quiet ? nullptr : &std::cout;
    const int code = run_scenario_exit_code(cfg, options, std::cerr);
    if (code == kExitOk && !quiet) std::cout << "wrote " << cfg.output_dir.string() << "\n";
    return code;
}
