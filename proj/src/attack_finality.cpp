#include "beacon/attack_finality.hpp"

#include <cmath>
#include <iostream>

#include "beacon/finality.hpp"

namespace beacon {

WasteThreshold waste_threshold(std::int64_t total, std::int64_t committee_size, double stake) {
    if (total < 1 || committee_size < 1)
        throw ConfigError("waste_threshold: total and committee_size must be >= 1");
    if (stake <= 0.0 || stake >= 1.0)
        throw ConfigError("waste_threshold: stake must lie strictly between 0 and 1");
    if (stake >= 1.0 / 3.0)
        std::cerr << "warning: stake " << stake
                  << " is at or above 1/3; thresholds computed anyway\n";

    WasteThreshold w;
    w.withheld = std::int64_t(std::floor(stake * double(total)));
    const std::int64_t incorrect_needed = total - supermajority_threshold(total) + 1;
    w.honest_incorrect_base = incorrect_needed - w.withheld;
    w.honest_incorrect_with_own = w.honest_incorrect_base + 1;
    w.slots_needed = w.honest_incorrect_with_own > 0
                         ? (w.honest_incorrect_with_own + committee_size - 1) / committee_size
                         : 0;
    return w;
}

DelayResult execute_finality_delay(const CommitteeSchedule& schedule, Epoch target_epoch,
                                   Epoch continue_epochs, TieBreak tie_break) {
    if (target_epoch < 1)
        throw PreconditionError("target epoch has a proposable boundary slot",
                                "epoch 0 starts at the genesis slot");
    if (continue_epochs < 0) throw ConfigError("continue_epochs must be >= 0");

    const auto threshold = waste_threshold(schedule.total_validators, schedule.committee_size,
                                           schedule.stake_fraction);
    if (threshold.honest_incorrect_with_own > schedule.total_validators - schedule.attacker_count)
        throw PreconditionError("honest waste attainable",
                                "honest validators cannot supply the required wasted votes");

    Simulation sim(schedule, target_epoch, tie_break);
    const Slot spe = schedule.slots_per_epoch;
    const Slot boundary = target_epoch * spe;

    for (Epoch e = 0; e < target_epoch; ++e) sim.run_honest_epoch(e);

    if (!sim.is_attacker(sim.proposer(boundary)) || !sim.is_attacker(sim.proposer(boundary + 1)))
        throw PreconditionError("attacker proposes the boundary slot and the next slot",
                                "honest proposer scheduled in slot " +
                                    std::to_string(sim.is_attacker(sim.proposer(boundary))
                                                       ? boundary + 1
                                                       : boundary));

    const BlockId source = sim.honest_source(target_epoch);
    const BlockId borrowed_target = sim.honest_target(target_epoch, sim.public_head());

    // Step 1: withheld boundary block, successor, and one attacker vote.
    const BlockId own_ebb = sim.propose_private(boundary, sim.public_head());
    sim.attest_single_private(boundary, sim.proposer(boundary), source, own_ebb, own_ebb);
    std::int64_t wasted = sim.attest_slot(boundary, AttackerAttestMode::Withhold);

    BlockId fork_head = sim.propose_private(boundary + 1, own_ebb);
    wasted += sim.attest_slot(boundary + 1, AttackerAttestMode::Withhold);

    // Step 2: keep the public view headless until enough honest votes have
    // gone to the borrowed EBB.  Each extra slot of waiting needs the
    // attacker to hold that slot's proposal too.
    Slot slot = boundary + 1;
    while (wasted < threshold.honest_incorrect_with_own) {
        ++slot;
        if (slot >= boundary + spe)
            throw PreconditionError("honest waste attainable",
                                    "epoch ended before enough honest votes were wasted");
        if (!sim.is_attacker(sim.proposer(slot)))
            throw PreconditionError(
                "attacker proposes every slot until the waste threshold",
                "honest proposer scheduled in slot " + std::to_string(slot) +
                    " before the waste threshold was met");
        fork_head = sim.propose_private(slot, fork_head);
        wasted += sim.attest_slot(slot, AttackerAttestMode::Withhold);
    }

    // Step 3: release; the withheld chain is the only leaf.
    const Slot release_slot = slot;
    sim.release_end_of_slot(release_slot);

    // Step 4: honest proposals resume; every remaining attacker attestation
    // of the epoch is withheld.
    for (Slot s = release_slot + 1; s < boundary + spe; ++s) {
        sim.propose_public(s);
        sim.attest_slot(s, AttackerAttestMode::Withhold);
    }

    for (Epoch e = target_epoch + 1; e <= target_epoch + continue_epochs; ++e)
        sim.run_honest_epoch(e);

    Trace trace = sim.finish(target_epoch + continue_epochs);

    const auto link_votes = [&](BlockId target) {
        const auto epoch_tally = trace.finality.tally.find(target_epoch);
        if (epoch_tally == trace.finality.tally.end()) return std::int64_t(0);
        const auto it = epoch_tally->second.find({source, target});
        return it == epoch_tally->second.end() ? std::int64_t(0) : it->second;
    };

    DelayResult result{threshold,
                       release_slot,
                       wasted,
                       borrowed_target,
                       own_ebb,
                       link_votes(borrowed_target),
                       link_votes(own_ebb),
                       trace.finality.epoch_justified(target_epoch),
                       std::move(trace)};
    return result;
}

double denial_probability(double stake) {
    if (stake < 0.0 || stake > 1.0) throw ConfigError("stake must lie in [0, 1]");
    return stake * stake;
}

double delay_probability(std::int64_t n, double p_justify) {
    if (n < 1) throw ConfigError("delay length must be >= 1");
    if (p_justify < 0.0 || p_justify > 1.0) throw ConfigError("p_justify must lie in [0, 1]");
    const double p = p_justify;
    const double q = 1.0 - p;
    double end_t = q;  // P(no HH so far, last flip tails)
    double end_h = p;  // P(no HH so far, last flip heads)
    for (std::int64_t k = 1; k < n; ++k) {
        const double next_t = (end_t + end_h) * q;
        const double next_h = end_t * p;
        end_t = next_t;
        end_h = next_h;
    }
    return end_t + end_h;
}

Gwei delay_cost(std::int64_t n, const RewardParams& params, double stake, bool strict_leak) {
    if (n < 1) throw ConfigError("delay length must be >= 1");
    if (stake <= 0.0 || stake >= 1.0)
        throw ConfigError("delay_cost: stake must lie strictly between 0 and 1");
    const std::int64_t withheld = std::int64_t(std::floor(stake * double(params.total_validators)));
    const std::int64_t halves = (n + 1) / 2;
    const Gwei nu = max_attestation_value(params);
    if (n <= 4) return nu * withheld * halves;
    const Gwei leak = inactivity_leak(params, n);
    return nu * 2 * withheld * halves + (strict_leak ? leak * withheld : leak);
}

}  // namespace beacon
