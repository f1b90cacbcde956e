#include "beacon/fork_choice.hpp"

#include <vector>

namespace beacon {

std::map<ValidatorId, Attestation> latest_messages(const View& v) {
    std::map<ValidatorId, Attestation> latest;
    v.for_each_attestation([&](const Attestation& a) {
        auto it = latest.find(a.validator);
        if (it == latest.end() || a.slot >= it->second.slot) latest[a.validator] = a;
    });
    return latest;
}

WeightMap compute_weights(const View& v, const std::map<ValidatorId, Attestation>& latest,
                          std::size_t* ignored_votes) {
    WeightMap weights;
    if (ignored_votes) *ignored_votes = 0;
    const auto& state = v.state();
    for (const auto& [validator, att] : latest) {
        (void)validator;
        if (!v.block_visible(att.head)) {
            if (ignored_votes) ++*ignored_votes;
            continue;
        }
        for (BlockId cur = att.head; cur != kNoBlock; cur = state.block(cur).parent)
            ++weights[cur];
    }
    return weights;
}

WeightMap compute_weights(const View& v) { return compute_weights(v, latest_messages(v)); }

BlockId ghost_head(const View& v, BlockId start, TieBreak tie_break) {
    if (!v.block_visible(start)) throw std::invalid_argument("ghost_head: start not visible");

    const auto weights = compute_weights(v, latest_messages(v));
    const auto weight_of = [&](BlockId id) -> std::int64_t {
        auto it = weights.find(id);
        return it == weights.end() ? 0 : it->second;
    };

    // children[p] lists visible blocks whose parent is p, in id order.
    std::map<BlockId, std::vector<BlockId>> children;
    v.for_each_block([&](const Block& b) {
        if (b.parent != kNoBlock) children[b.parent].push_back(b.id);
    });

    BlockId cur = start;
    for (;;) {
        auto it = children.find(cur);
        if (it == children.end()) return cur;
        BlockId best = kNoBlock;
        std::int64_t best_weight = -1;
        for (BlockId child : it->second) {
            const auto w = weight_of(child);
            if (w > best_weight) {
                best = child;
                best_weight = w;
            } else if (w == best_weight && tie_break == TieBreak::MaxId && child > best) {
                best = child;
            }
        }
        cur = best;
    }
}

BlockId epoch_boundary_block(const View& v, BlockId head, Epoch epoch) {
    if (!v.block_visible(head)) throw std::invalid_argument("epoch_boundary_block: head not visible");
    if (epoch < 0) throw std::invalid_argument("epoch_boundary_block: negative epoch");
    const Slot boundary = epoch * v.slots_per_epoch();
    BlockId cur = head;
    while (v.block(cur).slot > boundary) {
        cur = v.block(cur).parent;
        if (cur == kNoBlock) throw std::logic_error("epoch_boundary_block: chain has no genesis");
    }
    return cur;
}

BlockId epoch_boundary_block(const View& v, Epoch epoch, TieBreak tie_break) {
    return epoch_boundary_block(v, ghost_head(v, kGenesisId, tie_break), epoch);
}

}  // namespace beacon
