#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace beacon {

using Slot = std::int64_t;
using Epoch = std::int64_t;
using ValidatorId = std::int32_t;
using BlockId = std::int32_t;

inline constexpr BlockId kGenesisId = 0;
inline constexpr BlockId kNoBlock = -1;
inline constexpr ValidatorId kNoProposer = -1;

/// A node in the block tree. Ids are assigned in creation order, so a
/// parent id is always smaller than any of its children's.
struct Block {
    BlockId id = kNoBlock;
    Slot slot = 0;
    ValidatorId proposer = kNoProposer;  // kNoProposer for genesis
    BlockId parent = kNoBlock;           // kNoBlock for genesis

    bool is_genesis() const { return parent == kNoBlock; }
};

/// A validator's per-slot vote: an FFG source/target checkpoint pair plus
/// a fork-choice head vote.
struct Attestation {
    ValidatorId validator = 0;
    Slot slot = 0;
    BlockId source = kNoBlock;
    BlockId target = kNoBlock;
    BlockId head = kNoBlock;
};

enum class Visibility { Public, AttackerPrivate };

enum class Actor { Public, Attacker };

/// Invalid static configuration (dimension mismatches, bad fractions, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scenario precondition does not hold (e.g. the attacker does not
/// propose a required slot). Carries the name of the failed precondition
/// so callers can report it in a structured way.
struct PreconditionError : std::runtime_error {
    std::string precondition;

    PreconditionError(std::string precondition_name, const std::string& message)
        : std::runtime_error(message), precondition(std::move(precondition_name)) {}
};

}  // namespace beacon
