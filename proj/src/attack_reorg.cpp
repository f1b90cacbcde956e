#include "beacon/attack_reorg.hpp"

namespace beacon {

namespace {

void check_window_shape(const CommitteeSchedule& schedule, const ReorgWindow& w) {
    if (w.m < 1 || w.n < 1) throw ConfigError("reorg window needs m >= 1 and n >= 1");
    if (w.start_slot < 0 || w.start_slot + w.m + w.n > schedule.slots_per_epoch)
        throw PreconditionError("window within one epoch",
                                "reorg window crosses the epoch boundary");
}

}  // namespace

bool window_feasible(const CommitteeSchedule& schedule, const ReorgWindow& w) {
    check_window_shape(schedule, w);
    for (Slot s = w.start_slot; s < w.start_slot + w.m; ++s)
        if (!schedule.attacker_proposes(s)) return false;
    std::int64_t red = 0;
    for (Slot s = w.start_slot; s < w.start_slot + w.m + w.n; ++s)
        red += schedule.attacker_seats(s);
    std::int64_t black = 0;
    for (Slot s = w.start_slot + w.m; s < w.start_slot + w.m + w.n; ++s)
        black += schedule.honest_seats(s);
    return red > black;
}

std::optional<ReorgWindow> epoch_reorg_feasible(const CommitteeSchedule& schedule, std::int64_t n,
                                                Slot min_start) {
    if (n < 1) throw ConfigError("reorg length must be >= 1");
    if (min_start < 0) throw ConfigError("min_start must be >= 0");
    for (Slot start = min_start; start + 1 + n <= schedule.slots_per_epoch; ++start) {
        if (!schedule.attacker_proposes(start)) continue;
        for (std::int64_t m = 1; start + m + n <= schedule.slots_per_epoch; ++m) {
            if (!schedule.attacker_proposes(start + m - 1)) break;
            const ReorgWindow w{start, m, n};
            if (window_feasible(schedule, w)) return w;
        }
    }
    return std::nullopt;
}

ReorgResult execute_reorg(const CommitteeSchedule& schedule, const ReorgWindow& w,
                          TieBreak tie_break) {
    if (!window_feasible(schedule, w))
        throw PreconditionError("window_feasible", "reorg window is not feasible");
    if (w.start_slot < 1)
        throw PreconditionError("window starts after the genesis slot",
                                "slot 0 holds the genesis block and cannot be forked over");

    Simulation sim(schedule, 0, tie_break);

    for (Slot s = 0; s < w.start_slot; ++s) sim.run_honest_slot(s, s > 0);

    const BlockId fork_parent = sim.public_head();

    std::vector<BlockId> fork_blocks;
    BlockId fork_head = fork_parent;
    for (Slot s = w.start_slot; s < w.start_slot + w.m; ++s) {
        fork_head = sim.propose_private(s, fork_head);
        fork_blocks.push_back(fork_head);
        sim.attest_slot(s, AttackerAttestMode::PrivateForkHead, fork_head);
    }

    // Honest proposers extend the stale head for n slots while the attacker
    // keeps voting its withheld fork.  A slot in this range whose scheduled
    // proposer is an attacker still produces a public block: the strategy
    // needs exactly n blocks to orphan, and the urn inequality already
    // counts that slot's attacker seats on the fork side.
    std::vector<BlockId> doomed;
    for (Slot s = w.start_slot + w.m; s < w.start_slot + w.m + w.n; ++s) {
        doomed.push_back(sim.propose_public(s));
        sim.attest_slot(s, AttackerAttestMode::PrivateForkHead, fork_head);
    }

    sim.release_end_of_slot(w.start_slot + w.m + w.n - 1);

    Trace trace = sim.finish(0);
    std::vector<BlockId> orphaned;
    for (BlockId b : doomed)
        if (!trace.state.is_ancestor(b, trace.head)) orphaned.push_back(b);

    const View pub(trace.state, Actor::Public);
    const auto weights = compute_weights(pub);
    const auto weight_of = [&](BlockId id) {
        const auto it = weights.find(id);
        return it == weights.end() ? std::int64_t(0) : it->second;
    };

    std::int64_t k = 0;
    for (Slot s = w.start_slot + w.m; s < w.start_slot + w.m + w.n; ++s)
        k += schedule.attacker_seats(s);

    return ReorgResult{w,
                       fork_parent,
                       fork_blocks,
                       orphaned,
                       weight_of(fork_blocks.front()),
                       weight_of(doomed.front()),
                       k,
                       std::move(trace)};
}

Gwei reorg_cost(const CommitteeSchedule& schedule, const ReorgWindow& w,
                const RewardParams& params) {
    check_window_shape(schedule, w);
    std::int64_t k = 0;
    for (Slot s = w.start_slot + w.m; s < w.start_slot + w.m + w.n; ++s)
        k += schedule.attacker_seats(s);
    return inclusion_reward(params, 1) * k;
}

CommitteeSchedule figure_toy_schedule() {
    CommitteeSchedule s;
    s.total_validators = 16;
    s.slots_per_epoch = 4;
    s.committee_size = 4;
    s.stake_fraction = 0.3;  // floor(0.3 * 16) = 4 attacker validators
    s.seed = 0;
    s.attacker_count = 4;
    s.committees = {
        {4, 5, 6, 7},    // slot 0: all honest
        {0, 8, 9, 10},   // slot 1: attacker proposes the fork block
        {11, 1, 2, 12},  // slot 2: honest proposal, two attacker seats
        {13, 3, 14, 15},
    };
    return s;
}

}  // namespace beacon
