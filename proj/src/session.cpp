#include "session.hpp"

#include <json.hpp>
#include <random>

#include "errors.hpp"

namespace strelay {

SimulationReport run_session(const CodeSuite& suite, const AdmissiblePair& pair, int horizon,
                             std::uint64_t message_seed,
                             const std::vector<SymbolVec>* messages) {
    const CodeParams& p = suite.params;
    const auto check = validate_pair(p.n1_erasures, p.n2_erasures, p.delay, pair);
    if (!check.ok)
        throw ChannelContractViolation(check.what + " at window starting " +
                                       std::to_string(check.window_start));
    if (messages) {
        if (static_cast<int>(messages->size()) < horizon)
            throw DimensionError("fewer message packets than the horizon");
        for (int t = 0; t < horizon; ++t)
            if ((*messages)[t].size() != static_cast<std::size_t>(p.k))
                throw DimensionError("message packet length does not match k");
    }

    SimulationReport rep;
    rep.horizon = horizon;
    rep.total_slots = horizon + p.delay;
    rep.n2 = p.n2;
    rep.mode = pair.budget_mode;
    rep.source_pattern = pair.source_link.str();
    rep.relay_pattern = pair.relay_link.str();

    std::mt19937_64 rng(message_seed);
    const std::uint64_t q = suite.field.size();
    auto draw = [&rng, q]() {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % q;
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= lim);
        return static_cast<Symbol>(x % q);
    };

    SourceEncoder enc(suite);
    RelayNode relay(suite);
    DestinationDecoder dec(suite, pair.budget_mode);
    std::vector<SymbolVec> sent(horizon);
    std::vector<char> verified(horizon, 0);

    bool ok = true;
    for (int t = 0; t < rep.total_slots && ok; ++t) {
        SymbolVec m(static_cast<std::size_t>(p.k), 0);
        if (t < horizon) {
            if (messages)
                m = (*messages)[t];
            else
                for (auto& s : m) s = draw();
            sent[t] = m;
        }
        SymbolVec x = enc.encode_next(m);
        relay.ingest(t, pair.source_link.erased(t) ? nullptr : &x);
        RelayPacket y = relay.emit(t);
        const std::vector<int> done =
            dec.ingest(t, pair.relay_link.erased(t) ? nullptr : &y);
        for (int tm : done) {
            if (tm >= horizon) continue;
            ++rep.messages_checked;
            if (dec.finalized_slot(tm) > tm + p.delay) {
                ok = false;
                rep.first_failure_slot = tm;
                rep.failure_what = "decoded after the deadline";
                break;
            }
            if (dec.message(tm) != sent[tm]) {
                ok = false;
                rep.first_failure_slot = tm;
                rep.failure_what = "decoded message differs from the sent one";
                break;
            }
            verified[tm] = 1;
        }
    }
    rep.max_fill = relay.max_fill();
    if (ok) {
        for (int tm = 0; tm < horizon; ++tm) {
            if (!verified[tm]) {
                ok = false;
                rep.first_failure_slot = tm;
                rep.failure_what = "message never finalized by its deadline";
                break;
            }
        }
    }
    if (ok && rep.max_fill > p.n2) {
        ok = false;
        rep.failure_what = "relay fill exceeded n2";
    }
    rep.success = ok;
    return rep;
}

std::string SimulationReport::to_json(int indent) const {
    nlohmann::json j{
        {"success", success},
        {"horizon", horizon},
        {"total_slots", total_slots},
        {"messages_checked", messages_checked},
        {"max_fill", max_fill},
        {"n2", n2},
        {"budget_mode", mode == BudgetMode::SlidingWindow ? "window" : "lemma2"},
        {"source_pattern", source_pattern},
        {"relay_pattern", relay_pattern},
    };
    if (!success) {
        j["first_failure_slot"] = first_failure_slot;
        j["failure_what"] = failure_what;
    }
    return j.dump(indent);
}

}  // namespace strelay
