// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/cli/config.hpp>
#include <powlab/dag/experiment.hpp>
#include <powlab/strongchain/attack_sim.hpp>
#include <powlab/strongchain/pool_variance.hpp>

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace powlab::cli {

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

/** Reads the keys of one mapping and rejects the ones nobody asked for. */
class Fields
{
public:
    Fields(std::optional<YAML::Node> node, std::string path) : m_path(std::move(path))
    {
        if (node) m_node = *node;
        if (present(m_node) && !m_node.IsMap()) throw ValidationError(where() + "expected a mapping");
    }

    std::string field(const std::string& key) const { return m_path.empty() ? key : m_path + "." + key; }

    /** Absent and null values both read as missing. */
    std::optional<YAML::Node> take(const std::string& key)
    {
        m_known.push_back(key);
        if (!present(m_node)) return std::nullopt;
        const YAML::Node& self = m_node;
        YAML::Node n = self[key];
        if (!present(n)) return std::nullopt;
        return n;
    }

    static bool present(const YAML::Node& n) { return n.IsDefined() && !n.IsNull(); }

    template <class T>
    void get(const std::string& key, T& out)
    {
        if (const auto n = take(key)) out = convert<T>(*n, field(key));
    }

    template <class T>
    void get_list(const std::string& key, std::vector<T>& out)
    {
        const auto opt = take(key);
        if (!opt) return;
        const YAML::Node& n = *opt;
        out.clear();
        if (n.IsScalar()) {
            out.push_back(convert<T>(n, field(key)));
            return;
        }
        if (!n.IsSequence()) throw ValidationError(field(key) + ": expected a value or a list");
        for (std::size_t i = 0; i < n.size(); ++i) out.push_back(convert<T>(n[i], field(key) + "[" + std::to_string(i) + "]"));
    }

    void finish() const
    {
        if (!present(m_node)) return;
        for (const auto& kv : m_node) {
            const auto key = kv.first.as<std::string>();
            if (std::find(m_known.begin(), m_known.end(), key) != m_known.end()) continue;
            std::string msg = "unknown key `" + field(key) + "`";
            const auto hint = suggest_key(key, m_known);
            if (!hint.empty()) msg += "; did you mean `" + hint + "`?";
            throw ValidationError(msg);
        }
    }

    template <class T>
    static T convert(const YAML::Node& n, const std::string& path)
    {
        if (!n.IsScalar()) throw ValidationError(path + ": expected a scalar");
        if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
            if (!n.Scalar().empty() && n.Scalar().front() == '-') throw ValidationError(path + ": must be non-negative");
        }
        try {
            return n.as<T>();
        } catch (const YAML::BadConversion&) {
            throw ValidationError(path + ": cannot read `" + n.Scalar() + "`");
        }
    }

private:
    std::string where() const { return m_path.empty() ? "" : m_path + ": "; }

    YAML::Node m_node{YAML::NodeType::Undefined};
    std::string m_path;
    std::vector<std::string> m_known;
};

template <class F>
void rethrow_as_validation(const std::string& prefix, F&& f)
{
    try {
        f();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(prefix + e.what());
    }
}

void check(bool ok, const std::string& msg)
{
    if (!ok) throw ValidationError(msg);
}

void read(Fields& f, StrongchainScenario& s)
{
    f.get_list("strategies", s.strategies);
    f.get_list("ratios", s.ratios);
    f.get_list("alphas", s.alphas);
    f.get("blocks", s.blocks);
    f.get("latency", s.latency);
    f.get("T_s", s.T_s);
    f.get("c", s.c);
    f.get("R", s.R);
    const auto vn = f.take("variance");
    if (vn) s.variance = true;
    Fields v(vn, f.field("variance"));
    v.get("enabled", s.variance);
    v.get_list("alphas", s.variance_alphas);
    v.get_list("ratios", s.variance_ratios);
    v.get("horizon", s.variance_horizon);
    v.get("windows", s.variance_windows);
    v.finish();
}

void read(Fields& f, DagScenario& s)
{
    f.get("experiment", s.experiment);
    f.get_list("block_time", s.block_times);
    f.get_list("alphas", s.alphas);
    f.get_list("greedy_counts", s.greedy_counts);
    f.get("blocks", s.blocks);
    f.get("block_capacity", s.block_capacity);
    f.get("mempool_capacity", s.mempool_capacity);
    f.get("refill_period", s.refill_period);
    f.get("refill_count", s.refill_count);
    f.get("fee_distribution", s.fee_distribution);
    f.get("fee_value", s.fee_value);
    f.get("nodes", s.nodes);
    f.get("inter_node_delay", s.inter_node_delay);
}

void read(Fields& f, FeegameScenario& s)
{
    auto& g = s.game;
    f.get("n_miners", g.n_miners);
    f.get("blocks_per_game", g.blocks_per_game);
    f.get("n_games", g.n_games);
    f.get("fee_inflow", g.fee_inflow);
    f.get("inflow_period", g.inflow_period);
    f.get("block_time", g.block_time);
    f.get("full_mempool", g.full_mempool);
    f.get("cdep", g.cdep);
    if (const auto opt = f.take("frscs")) {
        const YAML::Node& n = *opt;
        check(n.IsSequence(), f.field("frscs") + ": expected a list of (lambda, rho) pairs");
        g.frscs.clear();
        for (std::size_t i = 0; i < n.size(); ++i) {
            const std::string path = f.field("frscs") + "[" + std::to_string(i) + "]";
            const YAML::Node e = n[i];
            if (e.IsSequence() && e.size() == 2) {
                g.frscs.emplace_back(Fields::convert<std::int64_t>(e[0], path + ".lambda"),
                                     Fields::convert<double>(e[1], path + ".rho"));
            } else {
                Fields pair(e, path);
                std::int64_t lambda = 0;
                double rho = -1.0;
                pair.get("lambda", lambda);
                pair.get("rho", rho);
                pair.finish();
                g.frscs.emplace_back(lambda, rho);
            }
        }
    }
    f.get("orphan_compensation", g.orphan_compensation);
    f.get_list("function_fork_x", g.function_fork_x);
    f.get("exploration", g.exploration);
    f.get("tail_fraction", g.tail_fraction);
    f.get("significance", g.significance);
    f.get("bootstrap_resamples", g.bootstrap_resamples);
    f.get_list("dc_grid", s.dc_grid);
    f.get("csv_every", s.csv_every);
    f.get("full_grid", s.full_grid);
}

void read(Fields& f, GametheoryScenario& s)
{
    if (const auto opt = f.take("levels")) {
        const YAML::Node& n = *opt;
        check(n.IsSequence(), f.field("levels") + ": expected a list");
        s.levels.clear();
        for (std::size_t i = 0; i < n.size(); ++i) {
            const std::string path = f.field("levels") + "[" + std::to_string(i) + "]";
            const YAML::Node e = n[i];
            gametheory::PayoffLevels l;
            if (e.IsSequence()) {
                check(e.size() == 4, path + ": expected [a, b, c, d]");
                l = {Fields::convert<double>(e[0], path + ".a"), Fields::convert<double>(e[1], path + ".b"),
                     Fields::convert<double>(e[2], path + ".c"), Fields::convert<double>(e[3], path + ".d")};
            } else {
                Fields m(e, path);
                m.get("a", l.a);
                m.get("b", l.b);
                m.get("c", l.c);
                m.get("d", l.d);
                m.finish();
            }
            s.levels.push_back(l);
        }
    }
    f.get("delta", s.delta);
}

void validate(const StrongchainScenario& s)
{
    check(!s.strategies.empty(), "params.strategies: must not be empty");
    for (const auto& name : s.strategies) rethrow_as_validation("params.strategies: ", [&] { strongchain::parse_strategy(name); });
    check(!s.ratios.empty(), "params.ratios: must not be empty");
    check(!s.alphas.empty(), "params.alphas: must not be empty");
    for (double a : s.alphas) check(a >= 0.0 && a <= 1.0, "params.alphas: must lie in [0, 1]");
    check(s.blocks > 0, "params.blocks: must be positive");
    check(s.latency >= 0.0, "params.latency: must be non-negative");
    for (double r : s.ratios) {
        rethrow_as_validation("params.ratios: ", [&] { strongchain::StrongchainParams::with_ratio(r, s.T_s, s.c); });
    }
    check(s.R > 0.0, "params.R: must be positive");
    if (s.variance) {
        for (double a : s.variance_alphas) check(a > 0.0 && a <= 1.0, "params.variance.alphas: must lie in (0, 1]");
        for (double r : s.variance_ratios) {
            rethrow_as_validation("params.variance.ratios: ", [&] { strongchain::StrongchainParams::with_ratio(r, s.T_s, s.c); });
        }
        check(s.variance_horizon >= strongchain::kMinHorizon, "params.variance.horizon: must be at least 100");
        check(s.variance_windows >= 2, "params.variance.windows: must be at least 2");
    }
}

void validate(const DagScenario& s)
{
    check(s.experiment == "duel" || s.experiment == "greedy_count" || s.experiment == "pool_duel",
          "params.experiment: expected duel, greedy_count or pool_duel");
    check(!s.block_times.empty(), "params.block_time: must not be empty");
    check(s.blocks > 0, "params.blocks: must be positive");
    check(s.fee_distribution == "exponential" || s.fee_distribution == "flat",
          "params.fee_distribution: expected exponential or flat");
    check(s.fee_value >= 0.0, "params.fee_value: must be non-negative");
    check(s.nodes >= 1, "params.nodes: must be at least 1");
    if (s.experiment == "greedy_count") {
        for (auto n : s.greedy_counts) check(n <= 10, "params.greedy_counts: at most 10 of the ten miners");
    } else {
        check(!s.alphas.empty(), "params.alphas: must not be empty");
        const double hi = s.experiment == "pool_duel" ? 0.5 : 1.0;
        for (double a : s.alphas) check(a > 0.0 && a < hi, "params.alphas: out of range for " + s.experiment);
    }
    for (double bt : s.block_times) {
        dag::DagConfig c;
        c.block_time = bt;
        c.block_capacity = s.block_capacity;
        c.mempool_capacity = s.mempool_capacity;
        c.refill_period = s.refill_period;
        c.refill_count = s.refill_count;
        c.nodes = s.nodes;
        c.inter_node_delay = s.inter_node_delay;
        rethrow_as_validation("params.", [&] { c.validate(); });
    }
}

void validate(const FeegameScenario& s)
{
    rethrow_as_validation("params.", [&] { s.game.validate(); });
    check(!s.dc_grid.empty(), "params.dc_grid: must not be empty");
    check(std::is_sorted(s.dc_grid.begin(), s.dc_grid.end()), "params.dc_grid: must be sorted ascending");
    for (double v : s.dc_grid) check(v >= 0.0 && v <= 1.0, "params.dc_grid: must lie in [0, 1]");
    check(s.csv_every >= 1, "params.csv_every: must be at least 1");
}

void validate(const GametheoryScenario& s)
{
    check(!s.levels.empty(), "params.levels: must not be empty");
    for (const auto& l : s.levels) {
        check(std::isfinite(l.a) && std::isfinite(l.b) && std::isfinite(l.c) && std::isfinite(l.d),
              "params.levels: must be finite");
    }
    check(s.delta >= 0.0 && s.delta < 1.0, "params.delta: must lie in [0, 1)");
}

} // namespace

std::string suggest_key(const std::string& key, const std::vector<std::string>& candidates)
{
    std::string best;
    std::size_t best_d = 4;
    for (const auto& c : candidates) {
        const auto d = edit_distance(key, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::string to_string(ScenarioKind k)
{
    switch (k) {
    case ScenarioKind::Strongchain: return "strongchain";
    case ScenarioKind::Dag: return "dag";
    case ScenarioKind::Feegame: return "feegame";
    case ScenarioKind::Gametheory: return "gametheory";
    }
    return "?";
}

ScenarioKind parse_kind(const std::string& s)
{
    if (s == "strongchain") return ScenarioKind::Strongchain;
    if (s == "dag") return ScenarioKind::Dag;
    if (s == "feegame") return ScenarioKind::Feegame;
    if (s == "gametheory") return ScenarioKind::Gametheory;
    throw ValidationError("kind: expected strongchain, dag, feegame or gametheory, got `" + s + "`");
}

void ScenarioConfig::validate() const
{
    check(runs >= 1, "runs: must be at least 1");
    check(!output_dir.empty(), "output_dir: must not be empty");
    std::visit([](const auto& p) { cli::validate(p); }, params);
}

ScenarioConfig parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("parse error: ") + e.what());
    }
    if (!root.IsMap()) throw ParseError("parse error: the top level must be a key-value mapping");

    ScenarioConfig cfg;
    Fields top(root, "");
    std::string kind;
    top.get("kind", kind);
    if (kind.empty()) throw ValidationError("kind: required");
    cfg.kind = parse_kind(kind);
    top.get("seed", cfg.seed);
    top.get("runs", cfg.runs);
    std::string out = cfg.output_dir.string();
    top.get("output_dir", out);
    cfg.output_dir = out;

    Fields params(top.take("params"), "params");
    switch (cfg.kind) {
    case ScenarioKind::Strongchain: cfg.params = StrongchainScenario{}; break;
    case ScenarioKind::Dag: cfg.params = DagScenario{}; break;
    case ScenarioKind::Feegame: cfg.params = FeegameScenario{}; break;
    case ScenarioKind::Gametheory: cfg.params = GametheoryScenario{}; break;
    }
    std::visit([&](auto& p) { read(params, p); }, cfg.params);
    params.finish();
    top.finish();
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_paper_scale(ScenarioConfig& config)
{
    if (auto* f = std::get_if<FeegameScenario>(&config.params)) {
        f->game.n_miners = 100;
        f->game.blocks_per_game = 10000;
        f->game.n_games = 300000;
    }
}

nlohmann::ordered_json ScenarioConfig::to_json() const
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    j["seed"] = seed;
    j["runs"] = runs;
    j["output_dir"] = output_dir.string();
    nlohmann::ordered_json p;
    if (const auto* s = std::get_if<StrongchainScenario>(&params)) {
        p["strategies"] = s->strategies;
        p["ratios"] = s->ratios;
        p["alphas"] = s->alphas;
        p["blocks"] = s->blocks;
        p["latency"] = s->latency;
        p["T_s"] = s->T_s;
        p["c"] = s->c;
        p["R"] = s->R;
        p["variance"] = {{"enabled", s->variance},
                         {"alphas", s->variance_alphas},
                         {"ratios", s->variance_ratios},
                         {"horizon", s->variance_horizon},
                         {"windows", s->variance_windows}};
    } else if (const auto* d = std::get_if<DagScenario>(&params)) {
        p["experiment"] = d->experiment;
        p["block_time"] = d->block_times;
        p["alphas"] = d->alphas;
        p["greedy_counts"] = d->greedy_counts;
        p["blocks"] = d->blocks;
        p["block_capacity"] = d->block_capacity;
        p["mempool_capacity"] = d->mempool_capacity;
        p["refill_period"] = d->refill_period;
        p["refill_count"] = d->refill_count;
        p["fee_distribution"] = d->fee_distribution;
        p["fee_value"] = d->fee_value;
        p["nodes"] = d->nodes;
        p["inter_node_delay"] = d->inter_node_delay;
    } else if (const auto* f = std::get_if<FeegameScenario>(&params)) {
        const auto& g = f->game;
        p["n_miners"] = g.n_miners;
        p["blocks_per_game"] = g.blocks_per_game;
        p["n_games"] = g.n_games;
        p["fee_inflow"] = g.fee_inflow;
        p["inflow_period"] = g.inflow_period;
        p["block_time"] = g.block_time;
        p["full_mempool"] = g.full_mempool;
        p["cdep"] = g.cdep;
        p["frscs"] = nlohmann::ordered_json::array();
        for (const auto& [lambda, rho] : g.frscs) p["frscs"].push_back({lambda, rho});
        p["orphan_compensation"] = g.orphan_compensation;
        p["function_fork_x"] = g.function_fork_x;
        p["exploration"] = g.exploration;
        p["tail_fraction"] = g.tail_fraction;
        p["significance"] = g.significance;
        p["bootstrap_resamples"] = g.bootstrap_resamples;
        p["dc_grid"] = f->dc_grid;
        p["csv_every"] = f->csv_every;
        p["full_grid"] = f->full_grid;
    } else if (const auto* t = std::get_if<GametheoryScenario>(&params)) {
        p["levels"] = nlohmann::ordered_json::array();
        for (const auto& l : t->levels) p["levels"].push_back({{"a", l.a}, {"b", l.b}, {"c", l.c}, {"d", l.d}});
        p["delta"] = t->delta;
    }
    j["params"] = p;
    return j;
}

} // namespace powlab::cli
