#include "beacon/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace beacon {

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::Propose: return "propose";
        case Phase::Attest: return "attest";
        case Phase::Release: return "release";
    }
    throw std::logic_error("unknown phase");
}

std::string to_string(Actor actor) {
    return actor == Actor::Attacker ? "attacker" : "public";
}

ScheduleBook::ScheduleBook(CommitteeSchedule base, Epoch base_epoch) : base_epoch_(base_epoch) {
    if (base_epoch < 0) throw ConfigError("base epoch must be >= 0");
    cache_.emplace(base_epoch, std::move(base));
}

const CommitteeSchedule& ScheduleBook::for_epoch(Epoch epoch) {
    if (epoch < 0) throw std::invalid_argument("for_epoch: negative epoch");
    auto it = cache_.find(epoch);
    if (it == cache_.end())
        it = cache_.emplace(epoch, schedule_for_epoch(cache_.at(base_epoch_), epoch)).first;
    return it->second;
}

Simulation::Simulation(CommitteeSchedule base_schedule, Epoch base_epoch, TieBreak tie_break)
    : state_(base_schedule.total_validators, base_schedule.slots_per_epoch),
      book_(base_schedule, base_epoch),
      tie_(tie_break),
      slots_per_epoch_(base_schedule.slots_per_epoch),
      committee_size_(base_schedule.committee_size),
      total_validators_(base_schedule.total_validators),
      attacker_count_(base_schedule.attacker_count),
      stake_fraction_(base_schedule.stake_fraction),
      seed_(base_schedule.seed) {}

const std::vector<ValidatorId>& Simulation::committee(Slot slot) {
    if (slot < 0) throw std::invalid_argument("committee: negative slot");
    const Epoch epoch = slot / slots_per_epoch_;
    return book_.for_epoch(epoch).committees[std::size_t(slot - epoch * slots_per_epoch_)];
}

ValidatorId Simulation::proposer(Slot slot) { return committee(slot).front(); }

BlockId Simulation::public_head() const { return ghost_head(public_view(), kGenesisId, tie_); }

BlockId Simulation::honest_source(Epoch epoch) const {
    if (epoch <= 0) return kGenesisId;
    const auto fs = update_finality(public_view(), epoch - 1);
    return fs.justified_ebb.rbegin()->second;
}

BlockId Simulation::honest_target(Epoch epoch, BlockId head) const {
    return epoch_boundary_block(public_view(), head, epoch);
}

void Simulation::emit(Slot slot, Phase phase, Actor actor, std::string action,
                      std::optional<BlockId> block, std::optional<Attestation> attestation) {
    events_.push_back(Event{slot, phase, actor, std::move(action), block, attestation});
}

BlockId Simulation::propose_public(Slot slot) {
    const ValidatorId p = proposer(slot);
    const BlockId id = state_.add_block(slot, p, public_head(), Visibility::Public);
    emit(slot, Phase::Propose, is_attacker(p) ? Actor::Attacker : Actor::Public, "propose", id);
    return id;
}

BlockId Simulation::propose_private(Slot slot, BlockId parent) {
    const ValidatorId p = proposer(slot);
    if (!is_attacker(p))
        throw PreconditionError("attacker proposes slot " + std::to_string(slot),
                                "slot proposer is honest");
    const BlockId id = state_.add_block(slot, p, parent, Visibility::AttackerPrivate);
    emit(slot, Phase::Propose, Actor::Attacker, "propose_private", id);
    return id;
}

std::int64_t Simulation::attest_slot(Slot slot, AttackerAttestMode mode, BlockId fork_head) {
    const Epoch epoch = slot / slots_per_epoch_;
    const BlockId head = public_head();
    const BlockId source = honest_source(epoch);
    const BlockId target = honest_target(epoch, head);

    BlockId fork_target = kNoBlock;
    if (mode == AttackerAttestMode::PrivateForkHead) {
        if (fork_head == kNoBlock)
            throw std::invalid_argument("attest_slot: fork head required in PrivateForkHead mode");
        fork_target = epoch_boundary_block(attacker_view(), fork_head, epoch);
    }

    std::int64_t honest = 0;
    bool withheld_any = false;
    for (ValidatorId v : committee(slot)) {
        if (!is_attacker(v)) {
            const Attestation a{v, slot, source, target, head};
            state_.add_attestation(a, Visibility::Public);
            emit(slot, Phase::Attest, Actor::Public, "attest", std::nullopt, a);
            ++honest;
            continue;
        }
        switch (mode) {
            case AttackerAttestMode::Honest: {
                const Attestation a{v, slot, source, target, head};
                state_.add_attestation(a, Visibility::Public);
                emit(slot, Phase::Attest, Actor::Attacker, "attest", std::nullopt, a);
                break;
            }
            case AttackerAttestMode::PrivateForkHead: {
                const Attestation a{v, slot, source, fork_target, fork_head};
                state_.add_attestation(a, Visibility::AttackerPrivate);
                emit(slot, Phase::Attest, Actor::Attacker, "attest_private", std::nullopt, a);
                break;
            }
            case AttackerAttestMode::Withhold:
                withheld_any = true;
                break;
        }
    }
    if (withheld_any) emit(slot, Phase::Attest, Actor::Attacker, "withhold");
    return honest;
}

Attestation Simulation::attest_single_private(Slot slot, ValidatorId v, BlockId source,
                                              BlockId target, BlockId head) {
    if (!is_attacker(v))
        throw std::invalid_argument("attest_single_private: validator is honest");
    const Attestation a{v, slot, source, target, head};
    state_.add_attestation(a, Visibility::AttackerPrivate);
    emit(slot, Phase::Attest, Actor::Attacker, "attest_private", std::nullopt, a);
    return a;
}

std::size_t Simulation::release_end_of_slot(Slot slot) {
    const std::size_t flipped = state_.release_all_private();
    emit(slot, Phase::Release, Actor::Attacker, "release");
    return flipped;
}

void Simulation::run_honest_slot(Slot slot, bool with_proposal) {
    if (with_proposal && slot > 0) propose_public(slot);
    attest_slot(slot, AttackerAttestMode::Honest);
}

void Simulation::run_honest_epoch(Epoch epoch) {
    const Slot first = epoch * slots_per_epoch_;
    for (Slot s = first; s < first + slots_per_epoch_; ++s) run_honest_slot(s);
}

Trace Simulation::finish(Epoch up_to_epoch) const {
    Trace t(state_);
    t.total_validators = total_validators_;
    t.slots_per_epoch = slots_per_epoch_;
    t.committee_size = committee_size_;
    t.stake_fraction = stake_fraction_;
    t.seed = seed_;
    t.tie_break = tie_;
    t.events = events_;

    const View pub = View(t.state, Actor::Public);
    t.head = ghost_head(pub, kGenesisId, tie_);
    for (BlockId cur = t.head; cur != kNoBlock; cur = t.state.block(cur).parent)
        t.canonical.push_back(cur);
    std::reverse(t.canonical.begin(), t.canonical.end());
    t.finality = update_finality(pub, up_to_epoch);
    t.slashable = check_slashable(t.state);
    return t;
}

}  // namespace beacon
