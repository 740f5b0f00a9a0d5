#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decoder.hpp"

namespace strelay {

/// End-to-end result of one source -> relay -> destination run.
struct SimulationReport {
    bool success = false;
    int horizon = 0;      // message slots carrying data
    int total_slots = 0;  // channel slots driven (horizon + T, covers deadlines)
    int messages_checked = 0;
    int first_failure_slot = -1;
    std::string failure_what;
    std::int64_t max_fill = 0;
    std::int64_t n2 = 0;
    BudgetMode mode = BudgetMode::SlidingWindow;
    std::string source_pattern;
    std::string relay_pattern;

    std::string to_json(int indent = 2) const;
};

/// Drives a full session over `horizon` message slots (channel runs T slots
/// longer so every deadline falls inside the run). Messages are drawn from
/// message_seed unless explicit `messages` are supplied (one length-k vector
/// per slot). The pair is validated first; an inadmissible pair throws
/// ChannelContractViolation.
SimulationReport run_session(const CodeSuite& suite, const AdmissiblePair& pair, int horizon,
                             std::uint64_t message_seed,
                             const std::vector<SymbolVec>* messages = nullptr);

}  // namespace strelay
