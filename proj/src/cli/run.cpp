// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "parallel.hpp"

#include <powlab/cli/output.hpp>
#include <powlab/cli/run.hpp>
#include <powlab/dag/experiment.hpp>
#include <powlab/strongchain/attack_sim.hpp>
#include <powlab/strongchain/pool_variance.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace powlab::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string key(const std::string& a, double v) { return a + "=" + format_number(v); }

double mean_of(const std::vector<double>& v)
{
    return v.empty() ? std::nan("") : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v)
{
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

Json metrics_json(const MetricSet& metrics)
{
    Json j = Json::object();
    for (const auto& [name, values] : metrics.values()) {
        j[name] = {{"mean", mean_of(values)}, {"std", std_of(values)}, {"n", values.size()}};
    }
    return j;
}

struct Context {
    const ScenarioConfig& config;
    const RunOptions& options;
    MetricSet metrics;
    Json extra = Json::object();

    fs::path file(const std::string& name) const { return config.output_dir / name; }
    void log(const std::string& line) const
    {
        if (options.log) *options.log << line << std::endl;
    }
};

// ---------------------------------------------------------------- strongchain

void run_strongchain(Context& ctx, const StrongchainScenario& s)
{
    struct Task {
        strongchain::StrategyTag strategy;
        double ratio, alpha;
        std::size_t run;
        strongchain::AttackResult result;
    };
    std::vector<Task> tasks;
    for (const auto& name : s.strategies) {
        for (double r : s.ratios) {
            for (double a : s.alphas) {
                for (std::size_t i = 0; i < ctx.config.runs; ++i) tasks.push_back({strongchain::parse_strategy(name), r, a, i, {}});
            }
        }
    }
    ctx.log("strongchain: " + std::to_string(tasks.size()) + " runs");
    parallel_for(tasks.size(), ctx.options.jobs, [&](std::size_t k) {
        auto& t = tasks[k];
        strongchain::AttackConfig cfg;
        cfg.strategy = t.strategy;
        cfg.alpha = t.alpha;
        cfg.params = strongchain::StrongchainParams::with_ratio(t.ratio, s.T_s, s.c);
        cfg.params.R = s.R;
        cfg.blocks = s.blocks;
        cfg.latency = s.latency;
        sim::Rng rng(ctx.config.seed, std::string("strongchain/") + to_string(t.strategy) + "/" + key("ratio", t.ratio) +
                                          "/" + key("alpha", t.alpha) + "/run/" + std::to_string(t.run));
        t.result = strongchain::simulate_attack(cfg, rng);
        const double p = t.result.relative_payoff;
        if (!(p >= 0.0 && p <= 1.0)) throw InvariantViolation("strongchain: relative payoff outside [0, 1]");
    });

    CsvWriter csv(ctx.file("selfish.csv"), "powlab.strongchain.selfish 1",
                  {"strategy", "ratio", "alpha", "run", "relative_payoff", "attacker_reward", "honest_reward",
                   "main_chain_blocks", "orphaned_blocks"});
    for (const auto& t : tasks) {
        const auto& r = t.result;
        csv.row({to_string(t.strategy), t.ratio, t.alpha, static_cast<unsigned long long>(t.run), r.relative_payoff,
                 r.attacker_reward, r.honest_reward, static_cast<unsigned long long>(r.main_chain_blocks),
                 static_cast<unsigned long long>(r.orphaned_blocks)});
        ctx.metrics.add(std::string("relative_payoff/") + to_string(t.strategy) + "/" + key("ratio", t.ratio) + "/" +
                            key("alpha", t.alpha),
                        r.relative_payoff);
    }

    Json crossover = Json::object();
    std::vector<Series> chart;
    for (const auto& name : s.strategies) {
        const auto tag = strongchain::parse_strategy(name);
        for (double r : s.ratios) {
            Series series{std::string(to_string(tag)) + " " + key("ratio", r), {}};
            std::vector<double> alphas = s.alphas;
            std::sort(alphas.begin(), alphas.end());
            Json first = nullptr;
            for (double a : alphas) {
                const auto& v = ctx.metrics.values().at(std::string("relative_payoff/") + to_string(tag) + "/" +
                                                        key("ratio", r) + "/" + key("alpha", a));
                const double m = mean_of(v);
                series.points.emplace_back(a, m);
                if (first.is_null() && m > a) first = a;
            }
            crossover[std::string(to_string(tag)) + "/" + key("ratio", r)] = first;
            chart.push_back(std::move(series));
        }
    }
    ctx.extra["crossover"] = crossover;

    if (s.variance) {
        struct VTask {
            double ratio, alpha;
            std::size_t run;
            strongchain::RewardStats stats;
            double equivalent;
        };
        std::vector<VTask> vt;
        for (double r : s.variance_ratios) {
            for (double a : s.variance_alphas) {
                for (std::size_t i = 0; i < ctx.config.runs; ++i) vt.push_back({r, a, i, {}, 0.0});
            }
        }
        parallel_for(vt.size(), ctx.options.jobs, [&](std::size_t k) {
            auto& t = vt[k];
            auto params = strongchain::StrongchainParams::with_ratio(t.ratio, s.T_s, s.c);
            params.R = s.R;
            sim::Rng rng(ctx.config.seed, "variance/" + key("ratio", t.ratio) + "/" + key("alpha", t.alpha) + "/run/" +
                                              std::to_string(t.run));
            t.stats = strongchain::estimate_reward_stats(t.alpha, params, s.variance_horizon, rng, s.variance_windows);
            t.equivalent = strongchain::equivalent_pool_size_for(t.stats.relative_std, s.variance_horizon);
        });
        CsvWriter v(ctx.file("pool_variance.csv"), "powlab.strongchain.pool_variance 1",
                    {"ratio", "alpha", "run", "mean_reward", "relative_std", "bitcoin_equivalent", "reduction"});
        for (const auto& t : vt) {
            v.row({t.ratio, t.alpha, static_cast<unsigned long long>(t.run), t.stats.mean, t.stats.relative_std,
                   t.equivalent, t.equivalent / t.alpha});
            ctx.metrics.add("reduction/" + key("ratio", t.ratio) + "/" + key("alpha", t.alpha), t.equivalent / t.alpha);
        }
    }

    if (ctx.options.svg) {
        std::vector<double> alphas = s.alphas;
        std::sort(alphas.begin(), alphas.end());
        Series diag{"payoff = alpha", {}};
        for (double a : alphas) diag.points.emplace_back(a, a);
        chart.push_back(diag);
        write_line_chart(ctx.file("relative_payoff.svg"), "Relative payoff", "alpha", "relative payoff", chart);
    }
}

// ------------------------------------------------------------------------ dag

void run_dag(Context& ctx, const DagScenario& s)
{
    struct Task {
        double block_time;
        double alpha;
        std::size_t n_greedy;
        std::size_t run;
        std::vector<dag::DagMinerSpec> miners;
        dag::ExperimentResult result;
    };
    std::vector<Task> tasks;
    for (double bt : s.block_times) {
        if (s.experiment == "greedy_count") {
            for (auto n : s.greedy_counts) {
                for (std::size_t i = 0; i < ctx.config.runs; ++i) {
                    tasks.push_back({bt, std::nan(""), n, i, dag::greedy_count_miners(n, s.nodes), {}});
                }
            }
        } else {
            for (double a : s.alphas) {
                auto miners = s.experiment == "duel" ? dag::duel_miners(a, s.nodes) : dag::pool_duel_miners(a, s.nodes);
                for (std::size_t i = 0; i < ctx.config.runs; ++i) tasks.push_back({bt, a, 1, i, miners, {}});
            }
        }
    }
    ctx.log("dag: " + std::to_string(tasks.size()) + " runs");
    parallel_for(tasks.size(), ctx.options.jobs, [&](std::size_t k) {
        auto& t = tasks[k];
        dag::DagConfig cfg;
        cfg.block_time = t.block_time;
        cfg.block_capacity = s.block_capacity;
        cfg.mempool_capacity = s.mempool_capacity;
        cfg.refill_period = s.refill_period;
        cfg.refill_count = s.refill_count;
        cfg.fees = s.fee_distribution == "flat" ? chain::FeeDistribution::flat(std::llround(s.fee_value))
                                                : chain::FeeDistribution::exponential(s.fee_value);
        cfg.nodes = s.nodes;
        cfg.inter_node_delay = s.inter_node_delay;
        const std::string point = s.experiment == "greedy_count" ? "n_greedy/" + std::to_string(t.n_greedy)
                                                                 : key("alpha", t.alpha);
        sim::Rng rng(ctx.config.seed,
                     "dag/" + s.experiment + "/" + key("bt", t.block_time) + "/" + point + "/run/" + std::to_string(t.run));
        t.result = dag::run_dag_experiment(cfg, t.miners, static_cast<double>(s.blocks) * t.block_time, rng);
        Amount total = 0;
        for (const auto& [id, r] : t.result.rewards) total += r;
        if (total > 0) {
            double weighted = 0.0;
            for (const auto& m : t.miners) weighted += m.power * t.result.profit.at(m.id);
            if (std::abs(weighted - 1.0) > 1e-9) throw InvariantViolation("dag: power-weighted profit factor is not 1");
        }
        if (t.result.unique_inclusions > t.result.inclusions) throw InvariantViolation("dag: more unique inclusions than inclusions");
    });

    CsvWriter csv(ctx.file("dag.csv"), "powlab.dag 1",
                  {"experiment", "block_time", "alpha", "n_greedy", "run", "miner", "selection", "power", "reward",
                   "profit", "collision", "throughput_tps"});
    for (const auto& t : tasks) {
        for (const auto& m : t.miners) {
            csv.row({s.experiment, t.block_time, t.alpha, static_cast<unsigned long long>(t.n_greedy),
                     static_cast<unsigned long long>(t.run), static_cast<unsigned long long>(m.id),
                     std::string(dag::to_string(m.selection)), m.power, static_cast<long long>(t.result.rewards.at(m.id)),
                     t.result.profit.at(m.id), t.result.collision, t.result.throughput_tps});
        }
        const std::string point = s.experiment == "greedy_count" ? "n_greedy=" + std::to_string(t.n_greedy)
                                                                 : key("alpha", t.alpha);
        ctx.metrics.add("collision/" + key("block_time", t.block_time) + "/" + point, t.result.collision);
        ctx.metrics.add("throughput_tps/" + key("block_time", t.block_time) + "/" + point, t.result.throughput_tps);
        if (s.experiment != "greedy_count") {
            // Miner 0 is the greedy one and miner 1 the honest one of equal power.
            ctx.metrics.add("profit/greedy/" + key("block_time", t.block_time) + "/" + point, t.result.profit.at(0));
            ctx.metrics.add("profit/honest/" + key("block_time", t.block_time) + "/" + point, t.result.profit.at(1));
        }
    }

    if (ctx.options.svg) {
        std::vector<Series> chart;
        for (double bt : s.block_times) {
            if (s.experiment == "greedy_count") {
                Series c{key("block_time", bt), {}};
                for (auto n : s.greedy_counts) {
                    c.points.emplace_back(static_cast<double>(n),
                                          mean_of(ctx.metrics.values().at("collision/" + key("block_time", bt) +
                                                                          "/n_greedy=" + std::to_string(n))));
                }
                chart.push_back(c);
            } else {
                for (const char* who : {"greedy", "honest"}) {
                    Series p{std::string(who) + " " + key("block_time", bt), {}};
                    for (double a : s.alphas) {
                        p.points.emplace_back(a, mean_of(ctx.metrics.values().at(std::string("profit/") + who + "/" +
                                                                                 key("block_time", bt) + "/" + key("alpha", a))));
                    }
                    chart.push_back(p);
                }
            }
        }
        if (s.experiment == "greedy_count") {
            write_line_chart(ctx.file("collision.svg"), "Collision rate", "greedy miners", "collision rate", chart);
        } else {
            write_line_chart(ctx.file("profit.svg"), "Profit factor", "alpha", "profit factor", chart);
        }
    }
}

// -------------------------------------------------------------------- feegame

void run_feegame(Context& ctx, const FeegameScenario& s)
{
    const sim::Rng root(ctx.config.seed, "feegame");
    const auto& base = s.game;
    std::vector<feegame::ThresholdPoint> points;
    std::optional<double> threshold;

    auto evaluate = [&](std::span<const double> grid) {
        struct Task {
            std::size_t point, run;
        };
        std::vector<Task> tasks;
        std::vector<feegame::ThresholdPoint> batch(grid.size());
        for (std::size_t p = 0; p < grid.size(); ++p) {
            batch[p].dc_fraction = grid[p];
            batch[p].runs.resize(ctx.config.runs);
            for (std::size_t i = 0; i < ctx.config.runs; ++i) tasks.push_back({p, i});
        }
        parallel_for(tasks.size(), ctx.options.jobs, [&](std::size_t k) {
            auto cfg = base;
            cfg.dc_fraction = grid[tasks[k].point];
            auto rng = feegame::threshold_run_rng(root, cfg.dc_fraction, tasks[k].run);
            auto result = feegame::run_fee_game(cfg, rng);
            if (result.conservation_violations) throw InvariantViolation("feegame: token conservation violated");
            batch[tasks[k].point].runs[tasks[k].run] = std::move(result);
        });
        for (auto& p : batch) feegame::judge_threshold_point(p, base, root);
        return batch;
    };

    if (s.full_grid) {
        points = evaluate(s.dc_grid);
        for (const auto& p : points) {
            if (p.qualified) {
                threshold = p.dc_fraction;
                break;
            }
        }
    } else {
        for (double v : s.dc_grid) {
            ctx.log("feegame: dc_fraction " + format_number(v));
            auto batch = evaluate(std::span<const double>(&v, 1));
            points.push_back(std::move(batch.front()));
            if (points.back().qualified) {
                threshold = v;
                break;
            }
        }
    }

    const auto labels = base.strategies();
    CsvWriter csv(ctx.file("fee_game.csv"), "powlab.feegame.games 1",
                  {"dc_fraction", "run", "game", "strategy", "mean_profit", "plays", "orphan_rate", "forking_share"});
    Json pts = Json::array();
    for (const auto& p : points) {
        for (std::size_t r = 0; r < p.runs.size(); ++r) {
            const auto& run = p.runs[r];
            for (std::size_t g = 0; g < run.games.size(); ++g) {
                if (g % s.csv_every != 0 && g + 1 != run.games.size()) continue;
                const auto& rec = run.games[g];
                for (std::size_t k = 0; k < labels.size(); ++k) {
                    if (!rec.plays[k]) continue;
                    csv.row({p.dc_fraction, static_cast<unsigned long long>(r), static_cast<unsigned long long>(g),
                             run.labels[k], rec.profit[k], static_cast<unsigned long long>(rec.plays[k]),
                             rec.orphan_rate, rec.forking_share});
                }
            }
            for (std::size_t k = 0; k < labels.size(); ++k) {
                if (!std::isnan(run.tail_profit[k])) {
                    ctx.metrics.add("tail_profit/" + run.labels[k] + "/" + key("dc", p.dc_fraction), run.tail_profit[k]);
                }
            }
            ctx.metrics.add("tail_orphan_rate/" + key("dc", p.dc_fraction), run.tail_orphan_rate);
            ctx.metrics.add("tail_forking_share/" + key("dc", p.dc_fraction), run.tail_forking_share);
            ctx.metrics.add("longest_chain_value/" + key("dc", p.dc_fraction), static_cast<double>(run.longest_chain_value));
        }
        pts.push_back({{"dc_fraction", p.dc_fraction}, {"qualified", p.qualified}, {"p_forking_higher", p.p_forking_higher}});
    }

    const auto& trace = points.back().runs.front().trace;
    const std::size_t k = trace.empty() ? 0 : trace.front().nu.size();
    std::vector<std::string> cols{"height", "fees_in_block", "next_claim", "rewardT"};
    for (std::size_t i = 0; i < k; ++i) cols.push_back("nu_" + std::to_string(i));
    CsvWriter tr(ctx.file("frsc_trace.csv"), "powlab.feegame.frsc_trace 1", cols);
    for (const auto& row : trace) {
        std::vector<CsvWriter::Cell> cells{static_cast<unsigned long long>(row.height), static_cast<long long>(row.fees),
                                           static_cast<long long>(row.next_claim), static_cast<long long>(row.reward_total)};
        for (Amount nu : row.nu) cells.emplace_back(static_cast<long long>(nu));
        tr.row(cells);
    }

    ctx.extra["threshold"] = threshold ? Json(*threshold) : Json("above grid max");
    ctx.extra["threshold_line"] = threshold ? "dc threshold: " + format_number(*threshold) : "dc threshold: above grid max";
    ctx.extra["points"] = pts;
    ctx.log(ctx.extra["threshold_line"].get<std::string>());

    if (ctx.options.svg) {
        Series share{"learners on forking arms", {}};
        Series p_higher{"P(forking beats compliant)", {}};
        for (const auto& p : points) {
            double sh = 0.0;
            for (const auto& r : p.runs) sh += r.tail_forking_share / static_cast<double>(p.runs.size());
            share.points.emplace_back(p.dc_fraction, sh);
            p_higher.points.emplace_back(p.dc_fraction, p.p_forking_higher);
        }
        write_line_chart(ctx.file("threshold.svg"), "Default-compliant threshold", "dc fraction", "share", {share, p_higher});
    }
}

// ----------------------------------------------------------------- gametheory

std::string profiles_string(const std::vector<gametheory::Profile>& ps)
{
    std::string out;
    for (const auto& p : ps) out += (out.empty() ? "" : " ") + ("(" + to_string(p.row) + "," + to_string(p.col) + ")");
    return out.empty() ? "none" : out;
}

void run_gametheory(Context& ctx, const GametheoryScenario& s)
{
    using namespace gametheory;
    CsvWriter csv(ctx.file("gametheory.csv"), "powlab.gametheory 1",
                  {"a", "b", "c", "d", "scenario", "pure_nash", "mixed_p_row", "mixed_p_col", "mixed_row_payoff",
                   "mixed_col_payoff", "honest_equilibrium", "in_scope", "critical_delta", "grim_trigger_sustained"});
    std::ostringstream table;
    table << std::left << std::setw(22) << "levels (a,b,c,d)" << std::setw(10) << "scenario" << std::setw(16) << "PNE"
          << std::setw(26) << "MNE (pH row, pH col; u)" << "(H,H) PNE\n";
    for (const auto& l : s.levels) {
        const auto g = BimatrixGame::from_levels(l);
        const auto pne = pure_nash(g);
        const auto mne = mixed_nash_2x2(g);
        const auto verdict = honest_is_equilibrium(l);
        const auto delta = grim_trigger_critical_delta(l);
        const auto grim = grim_trigger(l, s.delta);
        const double nan = std::nan("");
        csv.row({l.a, l.b, l.c, l.d, to_string(verdict.scenario), profiles_string(pne), mne ? mne->p_row : nan,
                 mne ? mne->p_col : nan, mne ? mne->row_payoff : nan, mne ? mne->col_payoff : nan,
                 std::string(verdict.equilibrium ? "true" : "false"), std::string(verdict.in_scope ? "true" : "false"),
                 delta ? *delta : nan, std::string(grim.cooperation_sustained ? "true" : "false")});
        std::string levels = "(" + format_number(l.a) + "," + format_number(l.b) + "," + format_number(l.c) + "," +
                             format_number(l.d) + ")";
        std::string mixed = mne ? "(" + format_number(mne->p_row) + ", " + format_number(mne->p_col) + "; " +
                                      format_number(mne->row_payoff) + ")"
                                : "none";
        table << std::setw(22) << levels << std::setw(10) << to_string(verdict.scenario) << std::setw(16)
              << profiles_string(pne) << std::setw(26) << mixed << (verdict.equilibrium ? "yes" : "no") << " ("
              << verdict.justification << ")\n";
        ctx.metrics.add("honest_equilibrium", verdict.equilibrium ? 1.0 : 0.0);
    }
    if (ctx.options.log) *ctx.options.log << table.str();
}

} // namespace

void run_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(config.output_dir);
    Context ctx{config, options, {}, Json::object()};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, StrongchainScenario>) run_strongchain(ctx, p);
            if constexpr (std::is_same_v<T, DagScenario>) run_dag(ctx, p);
            if constexpr (std::is_same_v<T, FeegameScenario>) run_feegame(ctx, p);
            if constexpr (std::is_same_v<T, GametheoryScenario>) run_gametheory(ctx, p);
        },
        config.params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json summary;
    summary["schema"] = "powlab.summary 1";
    summary["kind"] = to_string(config.kind);
    summary["seed"] = config.seed;
    summary["runs"] = config.runs;
    summary["config"] = config.to_json();
    summary["metrics"] = metrics_json(ctx.metrics);
    for (auto& [k, v] : ctx.extra.items()) summary[k] = v;
    summary["wall_time_s"] = wall;
    std::ofstream out(ctx.file("summary.json"));
    if (!out) throw std::runtime_error("cannot write summary.json");
    out << summary.dump(2) << "\n";
}

int run_scenario_exit_code(const ScenarioConfig& config, const RunOptions& options, std::ostream& err)
{
    try {
        run_scenario(config, options);
        return kExitOk;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::logic_error& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }
}

} // namespace powlab::cli
