// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CLI_CONFIG_HPP
#define POWLAB_CLI_CONFIG_HPP

#include <powlab/feegame/game.hpp>
#include <powlab/gametheory/base_game.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace powlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitInvariant = 4;

/** The file could not be read or is not a well-formed key-value tree. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A field is unknown, has the wrong type or breaks a precondition. */
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StrongchainScenario {
    std::vector<std::string> strategies{"selfish"};
    std::vector<double> ratios{1.0, 1024.0};
    std::vector<double> alphas{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
    std::uint64_t blocks{10000};
    double latency{0.53};
    double T_s{1.0 / 1024.0};
    double c{1.0};
    double R{12.5};

    bool variance{false};
    std::vector<double> variance_alphas{0.00245};
    std::vector<double> variance_ratios{4.0, 16.0, 64.0, 1024.0};
    std::uint64_t variance_horizon{2016};
    std::uint64_t variance_windows{20000};
};

struct DagScenario {
    /** duel | greedy_count | pool_duel */
    std::string experiment{"duel"};
    std::vector<double> block_times{20.0};
    std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<std::size_t> greedy_counts{0, 2, 4, 6, 8, 10};
    /** Run length in expected blocks. */
    std::uint64_t blocks{1000};
    std::size_t block_capacity{100};
    std::size_t mempool_capacity{10000};
    double refill_period{60.0};
    std::size_t refill_count{0};
    /** exponential | flat */
    std::string fee_distribution{"exponential"};
    double fee_value{100.0};
    std::size_t nodes{10};
    double inter_node_delay{1.0};
};

struct FeegameScenario {
    feegame::GameConfig game{feegame::GameConfig::reduced()};
    std::vector<double> dc_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    /** Write every n-th game to fee_game.csv. */
    std::size_t csv_every{10};
    /** Evaluate the whole grid instead of stopping at the threshold. */
    bool full_grid{false};
};

struct GametheoryScenario {
    std::vector<gametheory::PayoffLevels> levels{{2, 1, 3, 0}};
    double delta{0.9};
};

enum class ScenarioKind { Strongchain, Dag, Feegame, Gametheory };
std::string to_string(ScenarioKind k);
ScenarioKind parse_kind(const std::string& s);

struct ScenarioConfig {
    ScenarioKind kind{ScenarioKind::Gametheory};
    std::uint64_t seed{1};
    std::size_t runs{1};
    std::filesystem::path output_dir{"out"};
    std::variant<StrongchainScenario, DagScenario, FeegameScenario, GametheoryScenario> params;

    /** Throws ValidationError naming the field path. */
    void validate() const;
    /** Effective configuration, defaults included. */
    nlohmann::ordered_json to_json() const;
};

/** Parses and validates; throws ParseError or ValidationError. */
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/** Scales a feegame scenario to 100 miners, 10^4 blocks per game and 3*10^5 games. */
void apply_paper_scale(ScenarioConfig& config);

/** Closest candidate within edit distance 3, or empty. */
std::string suggest_key(const std::string& key, const std::vector<std::string>& candidates);

} // namespace powlab::cli

#endif // POWLAB_CLI_CONFIG_HPP
