#include "beacon/finality.hpp"

#include <stdexcept>

namespace beacon {

namespace {

std::map<Epoch, LinkTally> build_tallies(const View& v, Epoch up_to_epoch) {
    const auto spe = v.slots_per_epoch();
    // Count distinct validators per (epoch, source, target).  A validator
    // voting the same link twice in an epoch would be slashable; counting
    // distinct ids keeps the tally honest even on malformed input.
    std::map<Epoch, std::map<std::pair<BlockId, BlockId>, std::set<ValidatorId>>> voters;
    v.for_each_attestation([&](const Attestation& a) {
        const Epoch e = a.slot / spe;
        if (e > up_to_epoch) return;
        voters[e][{a.source, a.target}].insert(a.validator);
    });
    std::map<Epoch, LinkTally> tallies;
    for (const auto& [e, pairs] : voters)
        for (const auto& [link, ids] : pairs) tallies[e][link] = std::int64_t(ids.size());
    return tallies;
}

}  // namespace

bool supermajority_link(const View& v, BlockId source, BlockId target, Epoch epoch) {
    if (epoch < 0) throw std::invalid_argument("supermajority_link: negative epoch");
    const auto spe = v.slots_per_epoch();
    std::set<ValidatorId> voters;
    v.for_each_attestation([&](const Attestation& a) {
        if (a.slot / spe == epoch && a.source == source && a.target == target)
            voters.insert(a.validator);
    });
    return std::int64_t(voters.size()) >= supermajority_threshold(v.total_validators());
}

FinalityState update_finality(const View& v, Epoch up_to_epoch) {
    if (up_to_epoch < 0) throw std::invalid_argument("update_finality: negative epoch");

    FinalityState fs;
    fs.justified.insert(kGenesisId);
    fs.justified_ebb[0] = kGenesisId;
    fs.tally = build_tallies(v, up_to_epoch);

    const auto threshold = supermajority_threshold(v.total_validators());
    for (Epoch e = 1; e <= up_to_epoch; ++e) {
        const auto it = fs.tally.find(e);
        if (it == fs.tally.end()) continue;
        for (const auto& [link, count] : it->second) {
            const auto [source, target] = link;
            if (count < threshold || !fs.is_justified(source)) continue;
            fs.justified.insert(target);
            fs.justified_ebb[e] = target;
            const auto prev = fs.justified_ebb.find(e - 1);
            if (prev != fs.justified_ebb.end() && prev->second == source)
                fs.finalized.insert(source);
            break;  // two supermajority links in one epoch require slashable votes
        }
    }
    return fs;
}

std::set<BlockId> finalized_chain(const View& v, const FinalityState& fs) {
    std::set<BlockId> out;
    for (BlockId checkpoint : fs.finalized)
        for (BlockId cur = checkpoint; cur != kNoBlock; cur = v.block(cur).parent)
            out.insert(cur);
    return out;
}

}  // namespace beacon
