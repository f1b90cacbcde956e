#pragma once

#include <cstdint>
#include <vector>

#include "beacon/config.hpp"
#include "beacon/types.hpp"

namespace beacon {

/// One epoch's committee assignment: a uniformly random partition of all
/// validators into per-slot committees. The first member of each committee
/// proposes that slot. Validators [0, attacker_count) belong to the attacker.
struct CommitteeSchedule {
    std::int64_t total_validators = 0;
    std::int64_t slots_per_epoch = 0;
    std::int64_t committee_size = 0;
    double stake_fraction = 0.0;
    std::uint64_t seed = 0;
    std::int64_t attacker_count = 0;
    std::vector<std::vector<ValidatorId>> committees;  // [slot_in_epoch][seat]

    bool is_attacker(ValidatorId v) const { return v >= 0 && v < attacker_count; }

    ValidatorId proposer(std::int64_t slot_in_epoch) const {
        return committees.at(slot_in_epoch).front();
    }

    bool attacker_proposes(std::int64_t slot_in_epoch) const {
        return is_attacker(proposer(slot_in_epoch));
    }

    std::int64_t attacker_seats(std::int64_t slot_in_epoch) const {
        std::int64_t k = 0;
        for (ValidatorId v : committees.at(slot_in_epoch))
            if (is_attacker(v)) ++k;
        return k;
    }

    std::int64_t honest_seats(std::int64_t slot_in_epoch) const {
        return committee_size - attacker_seats(slot_in_epoch);
    }
};

/// Draws the epoch's committees by randomly permuting all validators and
/// chunking the permutation into committee_size groups. Deterministic in
/// rng_seed. The attacker is the fixed index set [0, floor(stake * total)).
CommitteeSchedule build_schedule(std::int64_t total_validators, std::int64_t slots_per_epoch,
                                 std::int64_t committee_size, double stake_fraction,
                                 std::uint64_t rng_seed);

/// Fresh independent schedule for a sibling epoch of the same run: epochs are
/// drawn independently, derived from the base schedule's seed.
CommitteeSchedule schedule_for_epoch(const CommitteeSchedule& base, Epoch epoch);

}  // namespace beacon
