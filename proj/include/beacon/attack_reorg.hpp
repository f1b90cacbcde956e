#pragma once

#include <optional>
#include <vector>

#include "beacon/rewards.hpp"
#include "beacon/schedule.hpp"
#include "beacon/simulate.hpp"

namespace beacon {

// A candidate reorg: the attacker privately builds m blocks over the slots
// [start_slot, start_slot + m) and lets honest proposers extend the stale
// public head for the following n slots, all within one epoch.  Slots are
// epoch-relative.
struct ReorgWindow {
    Slot start_slot = 0;
    std::int64_t m = 1;
    std::int64_t n = 1;
};

// The urn condition: the attacker proposes all m fork slots, and attacker
// committee seats over all m+n slots outnumber honest seats over the last n.
bool window_feasible(const CommitteeSchedule& schedule, const ReorgWindow& w);

// First feasible window in (start_slot asc, m asc) order for a length-n
// reorg, if any.  min_start skips early slots (execution cannot start at the
// genesis slot; feasibility scans from 0 by default).
std::optional<ReorgWindow> epoch_reorg_feasible(const CommitteeSchedule& schedule, std::int64_t n,
                                                Slot min_start = 0);

struct ReorgResult {
    ReorgWindow window;
    BlockId fork_parent = kNoBlock;
    std::vector<BlockId> fork_blocks;  // attacker chain, oldest first
    std::vector<BlockId> orphaned;     // honest blocks knocked off the canonical chain
    std::int64_t fork_weight = 0;      // branch weights at the fork, final public view
    std::int64_t orphan_weight = 0;
    std::int64_t attacker_post_fork_seats = 0;  // k in the cost formula
    Trace trace;
};

// Runs the strategy end to end in the schedule's epoch and returns the
// trace plus fork/orphan summaries.  Throws PreconditionError when the
// window is infeasible or starts at the genesis slot.
ReorgResult execute_reorg(const CommitteeSchedule& schedule, const ReorgWindow& w,
                          TieBreak tie_break = TieBreak::MinId);

// Attestation-value loss of the attack: every attacker seat in the last n
// slots attests a head that immediately becomes an orphan, forfeiting the
// best-case inclusion reward.
Gwei reorg_cost(const CommitteeSchedule& schedule, const ReorgWindow& w,
                const RewardParams& params);

// Hand-built 16-validator schedule for the figure-scale walkthrough: with
// window {start 1, m 1, n 1} the released fork wins 3 votes to 2.  Committee
// size is 4 so that the proposer-included vote counts work out to exactly
// those weights.
CommitteeSchedule figure_toy_schedule();
inline ReorgWindow figure_toy_window() { return ReorgWindow{1, 1, 1}; }

}  // namespace beacon
