#pragma once

#include <functional>
#include <string>
#include <vector>

#include "beacon/types.hpp"

namespace beacon {

// Append-only store for blocks and attestations.  Block ids are assigned in
// creation order starting from the genesis block, which is created by the
// constructor with id 0 at slot 0 and no proposer.  Visibility is monotone:
// a message starts either Public or AttackerPrivate and may later flip to
// Public via release_all_private, never the other way.
class ChainState {
public:
    ChainState(std::int64_t total_validators, std::int64_t slots_per_epoch);

    BlockId add_block(Slot slot, ValidatorId proposer, BlockId parent, Visibility vis);
    void add_attestation(const Attestation& att, Visibility vis);

    // Flips every private message to public.  Returns how many flipped.
    std::size_t release_all_private();

    const Block& block(BlockId id) const;
    bool block_visible(BlockId id, Actor actor) const;

    std::int64_t total_validators() const { return total_validators_; }
    std::int64_t slots_per_epoch() const { return slots_per_epoch_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t attestation_count() const { return attestations_.size(); }

    // True iff `ancestor` lies on the parent path of `descendant` (inclusive).
    bool is_ancestor(BlockId ancestor, BlockId descendant) const;

    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<Attestation>& attestations() const { return attestations_; }
    Visibility block_visibility(BlockId id) const;
    Visibility attestation_visibility(std::size_t index) const;

private:
    std::int64_t total_validators_;
    std::int64_t slots_per_epoch_;
    std::vector<Block> blocks_;
    std::vector<Visibility> block_vis_;
    std::vector<Attestation> attestations_;
    std::vector<Visibility> attestation_vis_;
};

// Read-only facade over a ChainState restricted to what one actor can see.
// The public actor sees public messages only; the attacker sees everything.
class View {
public:
    View(const ChainState& state, Actor actor) : state_(&state), actor_(actor) {}

    const ChainState& state() const { return *state_; }
    Actor actor() const { return actor_; }

    bool block_visible(BlockId id) const { return state_->block_visible(id, actor_); }
    const Block& block(BlockId id) const { return state_->block(id); }
    bool is_ancestor(BlockId ancestor, BlockId descendant) const {
        return state_->is_ancestor(ancestor, descendant);
    }
    std::int64_t total_validators() const { return state_->total_validators(); }
    std::int64_t slots_per_epoch() const { return state_->slots_per_epoch(); }

    void for_each_block(const std::function<void(const Block&)>& fn) const;
    void for_each_attestation(const std::function<void(const Attestation&)>& fn) const;

private:
    const ChainState* state_;
    Actor actor_;
};

inline View view(const ChainState& state, Actor actor) { return View(state, actor); }

struct SlashableViolation {
    std::string kind;  // "attestation" or "proposal"
    ValidatorId validator;
    Slot slot;
};

// Scans the full store (both visibilities) for double votes and double
// proposals: two distinct attestations by one validator for the same slot,
// or two distinct blocks by one proposer for the same slot.
std::vector<SlashableViolation> check_slashable(const ChainState& state);

}  // namespace beacon
