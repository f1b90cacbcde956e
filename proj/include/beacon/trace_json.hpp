#pragma once

#include <string>

#include <json.hpp>

#include "beacon/simulate.hpp"

namespace beacon {

// Serializes a trace as
//   {config, events: [{slot, phase, actor, action, block?, attestation?}],
//    final: {head, canonical, justified, finalized, slashable}}
nlohmann::json trace_to_json(const Trace& trace);

// Compact per-event lines for terminal reading.
std::string render_event_log(const Trace& trace);

std::string to_string(TieBreak tie_break);
TieBreak tie_break_from_string(const std::string& name);

}  // namespace beacon
