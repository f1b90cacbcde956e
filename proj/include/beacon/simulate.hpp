#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beacon/chain.hpp"
#include "beacon/config.hpp"
#include "beacon/finality.hpp"
#include "beacon/fork_choice.hpp"
#include "beacon/schedule.hpp"

namespace beacon {

enum class Phase { Propose, Attest, Release };

std::string to_string(Phase phase);
std::string to_string(Actor actor);

struct Event {
    Slot slot;
    Phase phase;
    Actor actor;
    std::string action;
    std::optional<BlockId> block;
    std::optional<Attestation> attestation;
};

// Completed simulation: final message store, event log, and the public
// view's head / canonical chain / finality summary.
struct Trace {
    explicit Trace(ChainState final_state) : state(std::move(final_state)) {}

    std::int64_t total_validators = 0;
    std::int64_t slots_per_epoch = 0;
    std::int64_t committee_size = 0;
    double stake_fraction = 0.0;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::MinId;

    ChainState state;
    std::vector<Event> events;
    BlockId head = kGenesisId;
    std::vector<BlockId> canonical;
    FinalityState finality;
    std::vector<SlashableViolation> slashable;
};

// Per-epoch committee schedules around one base epoch.  The base epoch keeps
// the schedule it was given; every other epoch draws a fresh independent
// schedule from a seed derived off the base seed.
class ScheduleBook {
public:
    ScheduleBook(CommitteeSchedule base, Epoch base_epoch);
    const CommitteeSchedule& for_epoch(Epoch epoch);

private:
    Epoch base_epoch_;
    std::map<Epoch, CommitteeSchedule> cache_;
};

enum class AttackerAttestMode {
    Honest,           // attacker seats follow the honest rule
    PrivateForkHead,  // attacker seats privately attest the given fork head
    Withhold          // attacker seats publish nothing
};

// Slot-driven engine with two phases per slot (propose, attest) and an
// end-of-slot release point.  Strategies compose the primitives; honest
// behaviour is always derived from the public view at action time.
class Simulation {
public:
    Simulation(CommitteeSchedule base_schedule, Epoch base_epoch = 0,
               TieBreak tie_break = TieBreak::MinId);

    ChainState& chain() { return state_; }
    const ChainState& chain() const { return state_; }
    View public_view() const { return View(state_, Actor::Public); }
    View attacker_view() const { return View(state_, Actor::Attacker); }

    const CommitteeSchedule& schedule(Epoch epoch) { return book_.for_epoch(epoch); }
    const std::vector<ValidatorId>& committee(Slot slot);
    ValidatorId proposer(Slot slot);
    bool is_attacker(ValidatorId v) const { return v < attacker_count_; }
    std::int64_t slots_per_epoch() const { return slots_per_epoch_; }
    TieBreak tie_break() const { return tie_; }

    BlockId public_head() const;
    // Source checkpoint for honest epoch-e attestations: the justified EBB
    // of the highest justified epoch before e, per the public view.
    BlockId honest_source(Epoch epoch) const;
    BlockId honest_target(Epoch epoch, BlockId head) const;

    // Scheduled proposer builds publicly on the public head.
    BlockId propose_public(Slot slot);
    // Attacker block on an explicit parent, withheld from the public view.
    BlockId propose_private(Slot slot, BlockId parent);

    // All committee members of the slot attest.  Honest members follow the
    // honest rule on the public view; attacker members follow `mode`.
    // Returns the number of honest attestations issued.
    std::int64_t attest_slot(Slot slot, AttackerAttestMode mode, BlockId fork_head = kNoBlock);

    // One attacker validator attests privately with explicit fields.
    Attestation attest_single_private(Slot slot, ValidatorId v, BlockId source, BlockId target,
                                      BlockId head);

    // End-of-slot release point; flips all withheld messages public.
    std::size_t release_end_of_slot(Slot slot);

    void run_honest_slot(Slot slot, bool with_proposal = true);
    void run_honest_epoch(Epoch epoch);

    const std::vector<Event>& events() const { return events_; }

    Trace finish(Epoch up_to_epoch) const;

private:
    void emit(Slot slot, Phase phase, Actor actor, std::string action,
              std::optional<BlockId> block = std::nullopt,
              std::optional<Attestation> attestation = std::nullopt);

    ChainState state_;
    ScheduleBook book_;
    TieBreak tie_;
    std::int64_t slots_per_epoch_;
    std::int64_t committee_size_;
    std::int64_t total_validators_;
    std::int64_t attacker_count_;
    double stake_fraction_;
    std::uint64_t seed_;
    std::vector<Event> events_;
};

}  // namespace beacon
