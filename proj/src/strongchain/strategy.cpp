// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/strongchain/strategy.hpp>

#include <stdexcept>
#include <string>

namespace powlab::strongchain {

const char* to_string(StrategyTag tag)
{
    switch (tag) {
    case StrategyTag::Honest: return "honest";
    case StrategyTag::Selfish: return "selfish";
    case StrategyTag::Reclusive: return "reclusive";
    case StrategyTag::Spiteful: return "spiteful";
    }
    return "?";
}

StrategyTag parse_strategy(std::string_view name)
{
    if (name == "honest") return StrategyTag::Honest;
    if (name == "selfish") return StrategyTag::Selfish;
    if (name == "reclusive") return StrategyTag::Reclusive;
    if (name == "spiteful") return StrategyTag::Spiteful;
    throw std::invalid_argument("unknown strongchain strategy '" + std::string(name) + "'");
}

Actions strategy_step(StrategyTag tag, const Observation& obs)
{
    Actions a;
    const double lead = obs.private_work - obs.public_work;

    if (tag != StrategyTag::Selfish) {
        a.publish = obs.unpublished > 0;
        a.adopt = lead < 0.0;
        a.broadcast_weak = tag != StrategyTag::Reclusive;
        a.include_foreign_weak = tag != StrategyTag::Spiteful || obs.foreign_weak_work > obs.reward_work;
        return a;
    }

    a.include_foreign_weak = true;
    a.broadcast_weak = obs.unpublished == 0;
    if (-lead >= obs.reward_work) {
        a.adopt = true;
        return a;
    }
    if (obs.unpublished > 0) {
        const bool override_public = obs.blocks_since_fork >= 2 && lead > 0.0 && lead <= obs.reward_work;
        const bool race = obs.trigger == Trigger::ReceivedBlock && lead == 0.0 && obs.public_work > 0.0;
        a.publish = override_public || race;
    }
    return a;
}

} // namespace powlab::strongchain
