#pragma once

#include <map>

#include "beacon/chain.hpp"
#include "beacon/config.hpp"
#include "beacon/types.hpp"

namespace beacon {

// weight[B] = number of validators whose latest attestation names B or a
// descendant of B as its head.  Blocks that attract no support are absent.
using WeightMap = std::map<BlockId, std::int64_t>;

// Latest message per validator: the visible attestation with the highest
// slot, later arrivals winning a same-slot tie.  Validators that have not
// attested in the view are absent.
std::map<ValidatorId, Attestation> latest_messages(const View& v);

WeightMap compute_weights(const View& v, const std::map<ValidatorId, Attestation>& latest,
                          std::size_t* ignored_votes = nullptr);
WeightMap compute_weights(const View& v);

// LMD GHOST: starting from `start`, repeatedly step to the heaviest visible
// child until reaching a leaf.  Equal-weight children are resolved by the
// tie_break rule (lowest or highest block id).
BlockId ghost_head(const View& v, BlockId start, TieBreak tie_break = TieBreak::MinId);

// Epoch boundary block for `epoch` on the chain ending at `head`: the
// ancestor with the highest slot not exceeding the epoch's first slot.
// When no block sits at the boundary slot itself the EBB is borrowed from
// an earlier epoch.
BlockId epoch_boundary_block(const View& v, BlockId head, Epoch epoch);

// Same, with the canonical chain taken from ghost_head on this view.
BlockId epoch_boundary_block(const View& v, Epoch epoch,
                             TieBreak tie_break = TieBreak::MinId);

}  // namespace beacon
