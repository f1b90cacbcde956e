#pragma once

#include <cstdint>

#include "beacon/types.hpp"

namespace beacon {

/// At equal-weight forks the production protocol breaks ties by hash order;
/// here a block-id rule keeps runs reproducible. MinId is the default.
enum class TieBreak { MinId, MaxId };

/// Chosen so that the out-of-the-box demos work: at the default parameters
/// this seed gives the attacker the first two proposer slots of the target
/// epoch (finality-delay scenario) and feasible length-1..3 reorg windows.
inline constexpr std::uint64_t kDefaultSeed = 20200000;

struct SimConfig {
    std::int64_t slots_per_epoch = 32;
    std::int64_t committee_size = 128;
    double stake_fraction = 0.3;
    std::uint64_t seed = kDefaultSeed;
    TieBreak tie_break = TieBreak::MinId;

    std::int64_t total_validators() const { return slots_per_epoch * committee_size; }
    Epoch epoch_of(Slot s) const { return s / slots_per_epoch; }
    Slot first_slot(Epoch e) const { return e * slots_per_epoch; }

    void validate() const {
        if (slots_per_epoch < 1) throw ConfigError("slots_per_epoch must be >= 1");
        if (committee_size < 1) throw ConfigError("committee_size must be >= 1");
        if (stake_fraction < 0.0 || stake_fraction > 1.0)
            throw ConfigError("stake_fraction must lie in [0, 1]");
    }
};

}  // namespace beacon
