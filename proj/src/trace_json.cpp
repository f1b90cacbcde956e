#include "beacon/trace_json.hpp"

#include <sstream>

namespace beacon {

using nlohmann::json;

std::string to_string(TieBreak tie_break) {
    return tie_break == TieBreak::MaxId ? "max_id" : "min_id";
}

TieBreak tie_break_from_string(const std::string& name) {
    if (name == "min_id") return TieBreak::MinId;
    if (name == "max_id") return TieBreak::MaxId;
    throw ConfigError("unknown tie_break '" + name + "' (expected min_id or max_id)");
}

nlohmann::json trace_to_json(const Trace& trace) {
    json config{{"total_validators", trace.total_validators},
                {"slots_per_epoch", trace.slots_per_epoch},
                {"committee_size", trace.committee_size},
                {"stake_fraction", trace.stake_fraction},
                {"seed", trace.seed},
                {"tie_break", to_string(trace.tie_break)}};

    json events = json::array();
    for (const auto& e : trace.events) {
        json ev{{"slot", e.slot},
                {"phase", to_string(e.phase)},
                {"actor", to_string(e.actor)},
                {"action", e.action}};
        if (e.block) ev["block"] = *e.block;
        if (e.attestation)
            ev["attestation"] = json{{"validator", e.attestation->validator},
                                     {"slot", e.attestation->slot},
                                     {"source", e.attestation->source},
                                     {"target", e.attestation->target},
                                     {"head", e.attestation->head}};
        events.push_back(std::move(ev));
    }

    json slashable = json::array();
    for (const auto& v : trace.slashable)
        slashable.push_back(
            json{{"kind", v.kind}, {"validator", v.validator}, {"slot", v.slot}});

    json final_state{{"head", trace.head},
                     {"canonical", trace.canonical},
                     {"justified", json(std::vector<BlockId>(trace.finality.justified.begin(),
                                                             trace.finality.justified.end()))},
                     {"finalized", json(std::vector<BlockId>(trace.finality.finalized.begin(),
                                                             trace.finality.finalized.end()))},
                     {"slashable", std::move(slashable)}};

    return json{{"config", std::move(config)},
                {"events", std::move(events)},
                {"final", std::move(final_state)}};
}

std::string render_event_log(const Trace& trace) {
    std::ostringstream out;
    for (const auto& e : trace.events) {
        out << "slot " << e.slot << " [" << to_string(e.phase) << "] " << to_string(e.actor)
            << " " << e.action;
        if (e.block) out << " block=" << *e.block;
        if (e.attestation)
            out << " v=" << e.attestation->validator << " (source=" << e.attestation->source
                << ", target=" << e.attestation->target << ", head=" << e.attestation->head
                << ")";
        out << "\n";
    }
    out << "head: " << trace.head << "\ncanonical:";
    for (BlockId b : trace.canonical) out << " " << b;
    out << "\njustified:";
    for (BlockId b : trace.finality.justified) out << " " << b;
    out << "\nfinalized:";
    for (BlockId b : trace.finality.finalized) out << " " << b;
    out << "\nslashable: " << trace.slashable.size() << "\n";
    return out.str();
}

}  // namespace beacon
