#pragma once

#include <map>
#include <set>
#include <utility>

#include "beacon/chain.hpp"
#include "beacon/types.hpp"

namespace beacon {

// Smallest integer count reaching 2/3 of `total` validators.
inline std::int64_t supermajority_threshold(std::int64_t total) {
    return (2 * total + 2) / 3;
}

// Distinct-validator counts of (source, target) pairs among one epoch's
// attestations.
using LinkTally = std::map<std::pair<BlockId, BlockId>, std::int64_t>;

// justified / finalized hold checkpoint blocks only; ancestors of a
// finalized checkpoint are recovered by finalized_chain below.
struct FinalityState {
    std::set<BlockId> justified;
    std::set<BlockId> finalized;
    // Epoch for which each checkpoint was justified (borrowed EBBs carry the
    // epoch they stand in for, not their own slot's epoch).
    std::map<Epoch, BlockId> justified_ebb;
    std::map<Epoch, LinkTally> tally;

    bool is_justified(BlockId b) const { return justified.count(b) != 0; }
    bool is_finalized(BlockId b) const { return finalized.count(b) != 0; }
    bool epoch_justified(Epoch e) const { return justified_ebb.count(e) != 0; }
};

// True iff at least the supermajority threshold of distinct validators
// attested (source, target) during `epoch` in this view.
bool supermajority_link(const View& v, BlockId source, BlockId target, Epoch epoch);

// Replays epochs 1..up_to_epoch over the view's attestations.  A checkpoint
// is justified when a supermajority link reaches it from an already
// justified source; a justified checkpoint is finalized when it sources the
// link that justifies the immediately following epoch's checkpoint.
FinalityState update_finality(const View& v, Epoch up_to_epoch);

// Ancestor closure of the finalized checkpoints: every block on a finalized
// checkpoint's chain is itself final.
std::set<BlockId> finalized_chain(const View& v, const FinalityState& fs);

}  // namespace beacon
