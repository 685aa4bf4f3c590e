// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_GAMETHEORY_BASE_GAME_HPP
#define POWLAB_GAMETHEORY_BASE_GAME_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace powlab::gametheory {

struct PayoffLevels {
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double d{0.0};
};

enum class Scenario { S1, S2, S3, S4, S5, Invalid };
std::string to_string(Scenario s);

enum class Move { Honest = 0, Greedy = 1 };
std::string to_string(Move m);

struct Profile {
    Move row{Move::Honest};
    Move col{Move::Honest};
    bool operator==(const Profile&) const = default;
};

/** payoffs[row][col] = (row payoff, column payoff); index 0 is honest. */
struct BimatrixGame {
    std::array<std::array<std::pair<double, double>, 2>, 2> payoffs{};

    /** (H,H)->(a,a), (H,G)->(b,c), (G,H)->(c,b), (G,G)->(d,d). */
    static BimatrixGame from_levels(const PayoffLevels& l);
    /** The same game with the players swapped. */
    BimatrixGame transposed() const;
};

/**
 * S1: d>c>a>b, S2: c>d>a>b, S3: c>a>d>b, S4: c>a>b>d,
 * S5: a=d with c>a and c>b; anything else is Invalid.
 */
Scenario classify_scenario(const PayoffLevels& l);

/** Profiles where no player strictly gains by deviating, in (H,H),(H,G),(G,H),(G,G) order. */
std::vector<Profile> pure_nash(const BimatrixGame& g);

struct MixedEquilibrium {
    /** Probability of playing honest. */
    double p_row{0.0};
    double p_col{0.0};
    double row_payoff{0.0};
    double col_payoff{0.0};
};

/** The fully mixed equilibrium from the indifference conditions, if it lies in (0,1)^2. */
std::optional<MixedEquilibrium> mixed_nash_2x2(const BimatrixGame& g);

/** Expected payoffs when row plays honest with p_row and column with p_col. */
std::pair<double, double> expected_payoffs(const BimatrixGame& g, double p_row, double p_col);

struct HonestVerdict {
    bool equilibrium{false};
    Scenario scenario{Scenario::Invalid};
    /** False when the levels fall outside S1-S5; the verdict is then unchecked by the analysis. */
    bool in_scope{false};
    std::string justification;
};

/** Whether (H,H) is a pure equilibrium, with the reason. */
HonestVerdict honest_is_equilibrium(const PayoffLevels& l);

/**
 * Infinitely repeated game, grim trigger against a one-shot deviation:
 * cooperating forever is worth a/(1-delta), deviating c + delta*d/(1-delta).
 */
struct RepeatedGamePayoffs {
    double cooperate{0.0};
    double deviate{0.0};
    bool cooperation_sustained{false};
};
RepeatedGamePayoffs grim_trigger(const PayoffLevels& l, double delta);

/** Smallest discount factor sustaining (H,H) under grim trigger: (c-a)/(c-d); nullopt if none in [0,1). */
std::optional<double> grim_trigger_critical_delta(const PayoffLevels& l);

} // namespace powlab::gametheory

#endif // POWLAB_GAMETHEORY_BASE_GAME_HPP
