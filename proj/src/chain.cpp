#include "beacon/chain.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace beacon {

ChainState::ChainState(std::int64_t total_validators, std::int64_t slots_per_epoch)
    : total_validators_(total_validators), slots_per_epoch_(slots_per_epoch) {
    if (total_validators < 1) throw ConfigError("total_validators must be >= 1");
    if (slots_per_epoch < 1) throw ConfigError("slots_per_epoch must be >= 1");
    blocks_.push_back(Block{kGenesisId, 0, kNoProposer, kNoBlock});
    block_vis_.push_back(Visibility::Public);
}

BlockId ChainState::add_block(Slot slot, ValidatorId proposer, BlockId parent, Visibility vis) {
    if (parent < 0 || std::size_t(parent) >= blocks_.size())
        throw std::out_of_range("add_block: unknown parent");
    if (slot <= blocks_[std::size_t(parent)].slot)
        throw std::invalid_argument("add_block: slot must exceed parent slot");
    const auto id = BlockId(blocks_.size());
    blocks_.push_back(Block{id, slot, proposer, parent});
    block_vis_.push_back(vis);
    return id;
}

void ChainState::add_attestation(const Attestation& att, Visibility vis) {
    if (att.head < 0 || std::size_t(att.head) >= blocks_.size())
        throw std::out_of_range("add_attestation: unknown head block");
    if (att.source < 0 || std::size_t(att.source) >= blocks_.size())
        throw std::out_of_range("add_attestation: unknown source block");
    if (att.target < 0 || std::size_t(att.target) >= blocks_.size())
        throw std::out_of_range("add_attestation: unknown target block");
    attestations_.push_back(att);
    attestation_vis_.push_back(vis);
}

std::size_t ChainState::release_all_private() {
    std::size_t flipped = 0;
    for (auto& vis : block_vis_)
        if (vis == Visibility::AttackerPrivate) {
            vis = Visibility::Public;
            ++flipped;
        }
    for (auto& vis : attestation_vis_)
        if (vis == Visibility::AttackerPrivate) {
            vis = Visibility::Public;
            ++flipped;
        }
    return flipped;
}

const Block& ChainState::block(BlockId id) const {
    if (id < 0 || std::size_t(id) >= blocks_.size())
        throw std::out_of_range("block: unknown id");
    return blocks_[std::size_t(id)];
}

bool ChainState::block_visible(BlockId id, Actor actor) const {
    if (id < 0 || std::size_t(id) >= blocks_.size())
        throw std::out_of_range("block_visible: unknown id");
    if (actor == Actor::Attacker) return true;
    return block_vis_[std::size_t(id)] == Visibility::Public;
}

bool ChainState::is_ancestor(BlockId ancestor, BlockId descendant) const {
    if (ancestor < 0 || std::size_t(ancestor) >= blocks_.size() || descendant < 0 ||
        std::size_t(descendant) >= blocks_.size())
        throw std::out_of_range("is_ancestor: unknown id");
    BlockId cur = descendant;
    while (cur != kNoBlock) {
        if (cur == ancestor) return true;
        // Ids grow along the chain, so once below the candidate we can stop.
        if (cur < ancestor) return false;
        cur = blocks_[std::size_t(cur)].parent;
    }
    return false;
}

Visibility ChainState::block_visibility(BlockId id) const {
    if (id < 0 || std::size_t(id) >= blocks_.size())
        throw std::out_of_range("block_visibility: unknown id");
    return block_vis_[std::size_t(id)];
}

Visibility ChainState::attestation_visibility(std::size_t index) const {
    if (index >= attestation_vis_.size())
        throw std::out_of_range("attestation_visibility: unknown index");
    return attestation_vis_[index];
}

void View::for_each_block(const std::function<void(const Block&)>& fn) const {
    for (const auto& b : state_->blocks())
        if (actor_ == Actor::Attacker || state_->block_visibility(b.id) == Visibility::Public)
            fn(b);
}

void View::for_each_attestation(const std::function<void(const Attestation&)>& fn) const {
    const auto& atts = state_->attestations();
    for (std::size_t i = 0; i < atts.size(); ++i)
        if (actor_ == Actor::Attacker || state_->attestation_visibility(i) == Visibility::Public)
            fn(atts[i]);
}

std::vector<SlashableViolation> check_slashable(const ChainState& state) {
    std::vector<SlashableViolation> out;

    std::map<std::pair<ValidatorId, Slot>, std::set<std::tuple<BlockId, BlockId, BlockId>>> votes;
    for (const auto& a : state.attestations())
        votes[{a.validator, a.slot}].insert({a.source, a.target, a.head});
    for (const auto& [key, distinct] : votes)
        if (distinct.size() > 1) out.push_back({"attestation", key.first, key.second});

    std::map<std::pair<ValidatorId, Slot>, std::set<BlockId>> proposals;
    for (const auto& b : state.blocks())
        if (b.proposer != kNoProposer) proposals[{b.proposer, b.slot}].insert(b.id);
    for (const auto& [key, distinct] : proposals)
        if (distinct.size() > 1) out.push_back({"proposal", key.first, key.second});

    return out;
}

}  // namespace beacon
