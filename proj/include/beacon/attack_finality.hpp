#pragma once

#include "beacon/rewards.hpp"
#include "beacon/schedule.hpp"
#include "beacon/simulate.hpp"

namespace beacon {

// How many honest attestations must be spent on the wrong target before the
// attacker can release its withheld boundary block and still leave the
// correct link short of a supermajority.
struct WasteThreshold {
    std::int64_t withheld = 0;                  // attacker attestations withheld per epoch
    std::int64_t honest_incorrect_base = 0;     // wrong-target honest votes needed
    std::int64_t honest_incorrect_with_own = 0; // plus the attacker's own fork attestation
    std::int64_t slots_needed = 0;              // full committees covering with_own
};

WasteThreshold waste_threshold(std::int64_t total, std::int64_t committee_size, double stake);

struct DelayResult {
    WasteThreshold threshold;
    Slot release_slot = 0;                    // end of this slot publishes the fork
    std::int64_t wasted = 0;                  // honest attestations on the borrowed EBB
    BlockId borrowed_target = kNoBlock;       // the EBB honest attesters saw pre-release
    BlockId own_ebb = kNoBlock;               // the withheld boundary block
    std::int64_t borrowed_link_votes = 0;     // final tally of (source, borrowed_target)
    std::int64_t own_link_votes = 0;          // final tally of (source, own_ebb)
    bool target_epoch_justified = false;
    Trace trace;
};

// Runs the EBB-withholding strategy against target_epoch: build the boundary
// block and its successor privately with one private attestation, let honest
// committees waste votes on the borrowed EBB, release, then withhold every
// remaining attacker attestation of the epoch.  continue_epochs > 0 appends
// fully honest epochs afterwards to show finalization resuming.
DelayResult execute_finality_delay(const CommitteeSchedule& schedule, Epoch target_epoch,
                                   Epoch continue_epochs = 0, TieBreak tie_break = TieBreak::MinId);

// Probability of drawing the proposer of both the boundary slot and the slot
// after it: stake^2.
double denial_probability(double stake);

// Exact probability that n independent epochs with per-epoch justification
// probability p_justify contain no two consecutive justified epochs.
double delay_probability(std::int64_t n, double p_justify);

// Lemma cost C(n) of an n-epoch delay.  strict_leak scales the inactivity
// term by the number of attacker validators instead of charging it once.
Gwei delay_cost(std::int64_t n, const RewardParams& params, double stake,
                bool strict_leak = false);

}  // namespace beacon
