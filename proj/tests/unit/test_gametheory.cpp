// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/gametheory/base_game.hpp>
#include <powlab/sim/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace powlab;
using namespace powlab::gametheory;

namespace {

const Profile HH{Move::Honest, Move::Honest};
const Profile HG{Move::Honest, Move::Greedy};
const Profile GH{Move::Greedy, Move::Honest};
const Profile GG{Move::Greedy, Move::Greedy};

bool contains(const std::vector<Profile>& v, const Profile& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

// Largest gain either player gets by a unilateral switch to a pure move.
double deviation_gain(const BimatrixGame& g, double p, double q)
{
    const auto [row, col] = expected_payoffs(g, p, q);
    const double row_best = std::max(expected_payoffs(g, 1.0, q).first, expected_payoffs(g, 0.0, q).first);
    const double col_best = std::max(expected_payoffs(g, p, 1.0).second, expected_payoffs(g, p, 0.0).second);
    return std::max(row_best - row, col_best - col);
}

PayoffLevels random_levels(sim::Rng& rng)
{
    return {rng.uniform() * 10, rng.uniform() * 10, rng.uniform() * 10, rng.uniform() * 10};
}

} // namespace

TEST_CASE("scenario classification")
{
    CHECK(classify_scenario({2, 1, 3, 0}) == Scenario::S4);
    CHECK(classify_scenario({2, 0, 3, 1}) == Scenario::S3);
    CHECK(classify_scenario({1, 0, 2, 1}) == Scenario::S5);
    CHECK(classify_scenario({1, 0, 2, 3}) == Scenario::S1);
    CHECK(classify_scenario({1, 0, 3, 2}) == Scenario::S2);
    CHECK(classify_scenario({3, 1, 2, 0}) == Scenario::Invalid);
    CHECK(to_string(Scenario::S4) == "S4");
}

TEST_CASE("pure equilibria of the paper's scenarios")
{
    CHECK(pure_nash(BimatrixGame::from_levels({2, 0, 3, 1})) == std::vector<Profile>{GG});
    CHECK(pure_nash(BimatrixGame::from_levels({2, 1, 3, 0})) == std::vector<Profile>{HG, GH});
    CHECK(pure_nash(BimatrixGame::from_levels({1, 1, 1, 1})).size() == 4);
}

TEST_CASE("mixed equilibrium")
{
    const auto m = mixed_nash_2x2(BimatrixGame::from_levels({2, 1, 3, 0}));
    REQUIRE(m.has_value());
    CHECK(m->p_row == 0.5);
    CHECK(m->p_col == 0.5);
    CHECK(m->row_payoff == 1.5);
    CHECK(m->col_payoff == 1.5);
    CHECK_FALSE(mixed_nash_2x2(BimatrixGame::from_levels({2, 0, 3, 1})).has_value());
    CHECK_FALSE(mixed_nash_2x2(BimatrixGame::from_levels({1, 1, 1, 1})).has_value());
}

TEST_CASE("honest verdict")
{
    for (PayoffLevels l : {PayoffLevels{2, 1, 3, 0}, PayoffLevels{2, 0, 3, 1}, PayoffLevels{1, 0, 2, 1}}) {
        const auto v = honest_is_equilibrium(l);
        CHECK_FALSE(v.equilibrium);
        CHECK(v.in_scope);
    }
    const auto out = honest_is_equilibrium({3, 1, 2, 0});
    CHECK(out.equilibrium);
    CHECK_FALSE(out.in_scope);
}

TEST_CASE("grim trigger")
{
    const PayoffLevels l{2, 0, 3, 1};
    const auto delta = grim_trigger_critical_delta(l);
    REQUIRE(delta.has_value());
    CHECK(*delta == doctest::Approx(0.5));
    CHECK(grim_trigger(l, 0.6).cooperation_sustained);
    CHECK_FALSE(grim_trigger(l, 0.4).cooperation_sustained);
    CHECK(grim_trigger(l, 0.5).cooperate == doctest::Approx(grim_trigger(l, 0.5).deviate));
    CHECK_FALSE(grim_trigger_critical_delta({1, 0, 2, 3}).has_value());
    CHECK_THROWS_AS(grim_trigger(l, 1.0), std::invalid_argument);
}

TEST_CASE("property: (H,H) is never pure when c > a and c > b")
{
    sim::Rng rng(31, "hh");
    int checked = 0;
    while (checked < 10000) {
        const auto l = random_levels(rng);
        if (!(l.c > l.a && l.c > l.b)) continue;
        ++checked;
        const auto ne = pure_nash(BimatrixGame::from_levels(l));
        CHECK_FALSE(contains(ne, HH));
        CHECK_FALSE(honest_is_equilibrium(l).equilibrium);
    }
}

TEST_CASE("property: equilibria agree with a best-response grid")
{
    sim::Rng rng(32, "grid");
    for (int iter = 0; iter < 300; ++iter) {
        const auto l = random_levels(rng);
        const auto g = BimatrixGame::from_levels(l);
        const auto ne = pure_nash(g);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                const Profile p{static_cast<Move>(r), static_cast<Move>(c)};
                const bool grid_eq = deviation_gain(g, r == 0 ? 1.0 : 0.0, c == 0 ? 1.0 : 0.0) <= 0.0;
                CHECK(grid_eq == contains(ne, p));
            }
        }
        const auto m = mixed_nash_2x2(g);
        if (m) {
            CHECK(deviation_gain(g, m->p_row, m->p_col) == doctest::Approx(0.0).epsilon(1e-9).scale(10));
            CHECK(m->p_row == doctest::Approx(m->p_col));
        }
        // Off the mixed point no interior grid profile is an equilibrium.
        double lowest = 1e300;
        double best_p = 0, best_q = 0;
        for (int i = 1; i < 100; ++i) {
            for (int j = 1; j < 100; ++j) {
                const double gain = deviation_gain(g, i / 100.0, j / 100.0);
                if (gain < lowest) {
                    lowest = gain;
                    best_p = i / 100.0;
                    best_q = j / 100.0;
                }
            }
        }
        const double scale = std::max({l.a, l.b, l.c, l.d}) - std::min({l.a, l.b, l.c, l.d});
        if (m) {
            CHECK(lowest <= 0.02 * scale);
            CHECK(std::abs(best_p - m->p_row) <= 0.02 + 1e-9);
            CHECK(std::abs(best_q - m->p_col) <= 0.02 + 1e-9);
        } else {
            CHECK(lowest > 0.0);
        }
    }
}

TEST_CASE("property: swapping players transposes equilibria")
{
    sim::Rng rng(33, "swap");
    for (int iter = 0; iter < 500; ++iter) {
        BimatrixGame g;
        for (auto& row : g.payoffs) {
            for (auto& cell : row) cell = {std::floor(rng.uniform() * 5), std::floor(rng.uniform() * 5)};
        }
        const auto t = g.transposed();
        const auto ne = pure_nash(g);
        const auto ne_t = pure_nash(t);
        CHECK(ne.size() == ne_t.size());
        for (const auto& p : ne) CHECK(contains(ne_t, Profile{p.col, p.row}));
        const auto m = mixed_nash_2x2(g);
        const auto mt = mixed_nash_2x2(t);
        CHECK(m.has_value() == mt.has_value());
        if (m && mt) {
            CHECK(mt->p_row == doctest::Approx(m->p_col));
            CHECK(mt->p_col == doctest::Approx(m->p_row));
            CHECK(mt->row_payoff == doctest::Approx(m->col_payoff));
        }
    }
}
