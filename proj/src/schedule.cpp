#include "beacon/schedule.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "beacon/rng.hpp"

namespace beacon {

CommitteeSchedule build_schedule(std::int64_t total_validators, std::int64_t slots_per_epoch,
                                 std::int64_t committee_size, double stake_fraction,
                                 std::uint64_t rng_seed) {
    if (slots_per_epoch < 1 || committee_size < 1)
        throw ConfigError("slots_per_epoch and committee_size must be >= 1");
    if (total_validators != slots_per_epoch * committee_size)
        throw ConfigError("total_validators must equal slots_per_epoch * committee_size");
    if (stake_fraction < 0.0 || stake_fraction > 1.0)
        throw ConfigError("stake_fraction must lie in [0, 1]");

    CommitteeSchedule s;
    s.total_validators = total_validators;
    s.slots_per_epoch = slots_per_epoch;
    s.committee_size = committee_size;
    s.stake_fraction = stake_fraction;
    s.seed = rng_seed;
    s.attacker_count = std::int64_t(std::floor(stake_fraction * double(total_validators)));

    std::vector<ValidatorId> pool(total_validators);
    std::iota(pool.begin(), pool.end(), 0);

    // Fisher-Yates with hand-rolled bounded draws; see rng.hpp for why.
    std::mt19937_64 gen(rng_seed);
    for (std::int64_t i = total_validators - 1; i > 0; --i) {
        const auto j = uniform_below(gen, std::uint64_t(i) + 1);
        std::swap(pool[i], pool[j]);
    }

    s.committees.resize(slots_per_epoch);
    auto it = pool.begin();
    for (auto& committee : s.committees) {
        committee.assign(it, it + committee_size);
        it += committee_size;
    }
    return s;
}

CommitteeSchedule schedule_for_epoch(const CommitteeSchedule& base, Epoch epoch) {
    return build_schedule(base.total_validators, base.slots_per_epoch, base.committee_size,
                          base.stake_fraction, sub_seed(base.seed, std::uint64_t(epoch)));
}

}  // namespace beacon
