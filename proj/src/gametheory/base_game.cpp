// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/gametheory/base_game.hpp>

#include <stdexcept>

namespace powlab::gametheory {

std::string to_string(Scenario s)
{
    switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
    case Scenario::S5: return "S5";
    case Scenario::Invalid: return "invalid";
    }
    return "?";
}

std::string to_string(Move m) { return m == Move::Honest ? "H" : "G"; }

BimatrixGame BimatrixGame::from_levels(const PayoffLevels& l)
{
    BimatrixGame g;
    g.payoffs[0][0] = {l.a, l.a};
    g.payoffs[0][1] = {l.b, l.c};
    g.payoffs[1][0] = {l.c, l.b};
    g.payoffs[1][1] = {l.d, l.d};
    return g;
}

BimatrixGame BimatrixGame::transposed() const
{
    BimatrixGame t;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) t.payoffs[c][r] = {payoffs[r][c].second, payoffs[r][c].first};
    }
    return t;
}

Scenario classify_scenario(const PayoffLevels& l)
{
    const double a = l.a, b = l.b, c = l.c, d = l.d;
    if (d > c && c > a && a > b) return Scenario::S1;
    if (c > d && d > a && a > b) return Scenario::S2;
    if (c > a && a > d && d > b) return Scenario::S3;
    if (c > a && a > b && b > d) return Scenario::S4;
    if (a == d && c > a && c > b) return Scenario::S5;
    return Scenario::Invalid;
}

std::vector<Profile> pure_nash(const BimatrixGame& g)
{
    std::vector<Profile> out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const bool row_ok = g.payoffs[r][c].first >= g.payoffs[1 - r][c].first;
            const bool col_ok = g.payoffs[r][c].second >= g.payoffs[r][1 - c].second;
            if (row_ok && col_ok) out.push_back({static_cast<Move>(r), static_cast<Move>(c)});
        }
    }
    return out;
}

std::pair<double, double> expected_payoffs(const BimatrixGame& g, double p_row, double p_col)
{
    const double w[2][2] = {{p_row * p_col, p_row * (1 - p_col)}, {(1 - p_row) * p_col, (1 - p_row) * (1 - p_col)}};
    double row = 0.0, col = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            row += w[r][c] * g.payoffs[r][c].first;
            col += w[r][c] * g.payoffs[r][c].second;
        }
    }
    return {row, col};
}

std::optional<MixedEquilibrium> mixed_nash_2x2(const BimatrixGame& g)
{
    const auto& P = g.payoffs;
    // The row mixture makes the column player indifferent, and vice versa.
    const double den_row = P[0][0].second - P[1][0].second - P[0][1].second + P[1][1].second;
    const double den_col = P[0][0].first - P[0][1].first - P[1][0].first + P[1][1].first;
    if (den_row == 0.0 || den_col == 0.0) return std::nullopt;
    const double p = (P[1][1].second - P[1][0].second) / den_row;
    const double q = (P[1][1].first - P[0][1].first) / den_col;
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return std::nullopt;
    const auto [u_row, u_col] = expected_payoffs(g, p, q);
    return MixedEquilibrium{p, q, u_row, u_col};
}

HonestVerdict honest_is_equilibrium(const PayoffLevels& l)
{
    HonestVerdict v;
    v.scenario = classify_scenario(l);
    v.in_scope = v.scenario != Scenario::Invalid;
    const auto ne = pure_nash(BimatrixGame::from_levels(l));
    for (const auto& p : ne) v.equilibrium = v.equilibrium || (p == Profile{Move::Honest, Move::Honest});
    if (v.equilibrium) {
        v.justification = "a >= c: honest is a best response to honest";
    } else {
        v.justification = "c > a: greedy strictly improves on (H,H)";
    }
    if (!v.in_scope) v.justification += " (levels outside S1-S5)";
    return v;
}

RepeatedGamePayoffs grim_trigger(const PayoffLevels& l, double delta)
{
    if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta: must lie in [0, 1)");
    RepeatedGamePayoffs r;
    r.cooperate = l.a / (1.0 - delta);
    r.deviate = l.c + delta * l.d / (1.0 - delta);
    r.cooperation_sustained = r.cooperate >= r.deviate;
    return r;
}

std::optional<double> grim_trigger_critical_delta(const PayoffLevels& l)
{
    if (l.a >= l.c) return 0.0;
    if (l.c <= l.d) return std::nullopt;
    const double delta = (l.c - l.a) / (l.c - l.d);
    if (delta >= 1.0) return std::nullopt;
    return delta;
}

} // namespace powlab::gametheory
