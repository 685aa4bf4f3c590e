// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CLI_RUN_HPP
#define POWLAB_CLI_RUN_HPP

#include <powlab/cli/config.hpp>

#include <ostream>

namespace powlab::cli {

/** A simulation broke one of its own invariants. */
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    unsigned jobs{1};
    bool svg{false};
    /** Progress and the game-theory table; null for silence. */
    std::ostream* log{nullptr};
};

/**
 * Runs the scenario and writes its CSVs and summary.json into
 * config.output_dir. Throws InvariantViolation on a simulation bug trap.
 */
void run_scenario(const ScenarioConfig& config, const RunOptions& options);

/** run_scenario mapped to exit codes: 0 on success, 4 on an invariant violation. */
int run_scenario_exit_code(const ScenarioConfig& config, const RunOptions& options, std::ostream& err);

} // namespace powlab::cli

#endif // POWLAB_CLI_RUN_HPP
