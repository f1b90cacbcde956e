#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beacon/finality.hpp"
#include "beacon/simulate.hpp"

using namespace beacon;

namespace {

// Threshold oracle straight from the definition: the least count whose
// triple reaches two thirds of the total.
std::int64_t least_two_thirds(std::int64_t total) {
    std::int64_t k = 0;
    while (3 * k < 2 * total) ++k;
    return k;
}

void vote_link(ChainState& state, ValidatorId v, Slot slot, BlockId source, BlockId target) {
    state.add_attestation({v, slot, source, target, target}, Visibility::Public);
}

}  // namespace

TEST_CASE("supermajority threshold is the two-thirds ceiling") {
    CHECK(supermajority_threshold(4096) == 2731);
    CHECK(supermajority_threshold(3) == 2);
    CHECK(supermajority_threshold(4) == 3);
    CHECK(supermajority_threshold(1) == 1);
    for (std::int64_t t = 1; t <= 300; ++t) CHECK(supermajority_threshold(t) == least_two_thirds(t));
}

TEST_CASE("no attestations leave only genesis justified and nothing final") {
    ChainState state(3, 4);
    const auto fs = update_finality(View(state, Actor::Public), 5);
    CHECK(fs.justified == std::set<BlockId>{kGenesisId});
    CHECK(fs.finalized.empty());
    CHECK(fs.epoch_justified(0));
    CHECK(!fs.epoch_justified(1));
}

TEST_CASE("a supermajority link from genesis justifies and finalizes it") {
    ChainState state(3, 4);
    BlockId parent = kGenesisId;
    for (Slot s = 1; s <= 4; ++s) parent = state.add_block(s, 0, parent, Visibility::Public);
    const BlockId ebb1 = parent;  // block at slot 4

    vote_link(state, 0, 4, kGenesisId, ebb1);
    vote_link(state, 1, 5, kGenesisId, ebb1);

    const auto fs = update_finality(View(state, Actor::Public), 1);
    CHECK(fs.is_justified(ebb1));
    CHECK(fs.justified_ebb.at(1) == ebb1);
    // The link's source was the previous epoch's justified checkpoint, so
    // justification of epoch 1 finalizes it.
    CHECK(fs.finalized == std::set<BlockId>{kGenesisId});
}

TEST_CASE("one vote short of the threshold justifies nothing") {
    ChainState state(3, 4);
    const BlockId ebb1 = state.add_block(4, 0, kGenesisId, Visibility::Public);
    vote_link(state, 0, 4, kGenesisId, ebb1);
    const auto fs = update_finality(View(state, Actor::Public), 1);
    CHECK(!fs.is_justified(ebb1));
    CHECK(fs.finalized.empty());
}

TEST_CASE("duplicate votes by one validator count once") {
    ChainState state(3, 4);
    const BlockId ebb1 = state.add_block(4, 0, kGenesisId, Visibility::Public);
    for (Slot s = 4; s <= 7; ++s) vote_link(state, 0, s, kGenesisId, ebb1);
    const auto fs = update_finality(View(state, Actor::Public), 1);
    CHECK(fs.tally.at(1).at({kGenesisId, ebb1}) == 1);
    CHECK(!fs.is_justified(ebb1));
}

TEST_CASE("links from unjustified sources are inert") {
    ChainState state(3, 4);
    const BlockId stray = state.add_block(1, 0, kGenesisId, Visibility::Public);
    const BlockId ebb1 = state.add_block(4, 1, stray, Visibility::Public);
    for (ValidatorId v = 0; v < 3; ++v) vote_link(state, v, 4, stray, ebb1);
    const auto fs = update_finality(View(state, Actor::Public), 1);
    CHECK(!fs.is_justified(ebb1));
    CHECK(!fs.is_justified(stray));
}

TEST_CASE("a skipped epoch breaks finalization but not justification") {
    ChainState state(3, 4);
    BlockId parent = kGenesisId;
    for (Slot s = 1; s <= 8; ++s) parent = state.add_block(s, 0, parent, Visibility::Public);
    const BlockId ebb2 = parent;  // slot 8 block

    // Nobody voted during epoch 1; epoch 2 links straight back to genesis.
    vote_link(state, 0, 8, kGenesisId, ebb2);
    vote_link(state, 1, 9, kGenesisId, ebb2);

    const auto fs = update_finality(View(state, Actor::Public), 2);
    CHECK(fs.is_justified(ebb2));
    CHECK(fs.justified_ebb.at(2) == ebb2);
    CHECK(!fs.epoch_justified(1));
    // Source is justified for epoch 0, not epoch 1, so nothing finalizes.
    CHECK(fs.finalized.empty());
}

TEST_CASE("consecutive links finalize each sourced checkpoint") {
    ChainState state(3, 4);
    BlockId parent = kGenesisId;
    std::map<Slot, BlockId> at_slot;
    for (Slot s = 1; s <= 12; ++s) {
        parent = state.add_block(s, 0, parent, Visibility::Public);
        at_slot[s] = parent;
    }
    for (ValidatorId v = 0; v < 2; ++v) {
        vote_link(state, v, 4, kGenesisId, at_slot[4]);
        vote_link(state, v, 8, at_slot[4], at_slot[8]);
        vote_link(state, v, 12, at_slot[8], at_slot[12]);
    }
    const auto fs = update_finality(View(state, Actor::Public), 3);
    CHECK(fs.justified == std::set<BlockId>{kGenesisId, at_slot[4], at_slot[8], at_slot[12]});
    CHECK(fs.finalized == std::set<BlockId>{kGenesisId, at_slot[4], at_slot[8]});

    // The ancestor closure of the final checkpoints covers slots 0..8.
    const auto chain = finalized_chain(View(state, Actor::Public), fs);
    CHECK(chain.size() == 9);
    CHECK(chain.count(at_slot[8]) == 1);
    CHECK(chain.count(at_slot[9]) == 0);
}

TEST_CASE("supermajority_link respects epoch boundaries") {
    ChainState state(3, 4);
    const BlockId ebb1 = state.add_block(4, 0, kGenesisId, Visibility::Public);
    vote_link(state, 0, 4, kGenesisId, ebb1);
    vote_link(state, 1, 7, kGenesisId, ebb1);
    // A third vote for the same link in the NEXT epoch must not count here.
    vote_link(state, 2, 8, kGenesisId, ebb1);

    const View pub(state, Actor::Public);
    CHECK(supermajority_link(pub, kGenesisId, ebb1, 1));
    CHECK(!supermajority_link(pub, kGenesisId, ebb1, 0));
    CHECK(!supermajority_link(pub, kGenesisId, ebb1, 2));
}

TEST_CASE("private attestations do not count toward public justification") {
    ChainState state(3, 4);
    const BlockId ebb1 = state.add_block(4, 0, kGenesisId, Visibility::Public);
    vote_link(state, 0, 4, kGenesisId, ebb1);
    state.add_attestation({1, 4, kGenesisId, ebb1, ebb1}, Visibility::AttackerPrivate);

    CHECK(!update_finality(View(state, Actor::Public), 1).is_justified(ebb1));
    CHECK(update_finality(View(state, Actor::Attacker), 1).is_justified(ebb1));

    state.release_all_private();
    CHECK(update_finality(View(state, Actor::Public), 1).is_justified(ebb1));
}

TEST_CASE("three-epoch run with an empty boundary slot borrows the EBB") {
    // Epochs 0 and 1 run perfectly honestly; epoch 2 loses its first
    // proposal (slot 64), so the slot-63 block stands in as the epoch-2
    // checkpoint and still gets justified.
    const auto schedule = build_schedule(4096, 32, 128, 0.3, kDefaultSeed);
    Simulation sim(schedule, 0, TieBreak::MinId);
    sim.run_honest_epoch(0);
    sim.run_honest_epoch(1);
    sim.run_honest_slot(64, false);
    for (Slot s = 65; s < 96; ++s) sim.run_honest_slot(s);

    const Trace t = sim.finish(2);
    CHECK(t.finality.justified == std::set<BlockId>{0, 32, 63});
    CHECK(t.finality.finalized == std::set<BlockId>{0, 32});
    CHECK(t.finality.justified_ebb.at(2) == 63);
    CHECK(t.state.block(63).slot == 63);
    CHECK(t.slashable.empty());
}

TEST_CASE("epoch zero self-links never justify later epochs") {
    // Epoch-0 honest attestations carry the degenerate (genesis, genesis)
    // link; after just that epoch nothing beyond genesis is justified.
    const auto schedule = build_schedule(64, 4, 16, 0.25, 11);
    Simulation sim(schedule, 0, TieBreak::MinId);
    sim.run_honest_epoch(0);
    const Trace t = sim.finish(0);
    CHECK(t.finality.justified == std::set<BlockId>{kGenesisId});
    CHECK(t.finality.finalized.empty());
}
