#pragma once

#include <memory>
#include <vector>

#include "erasure.hpp"
#include "relay.hpp"

namespace strelay {

/// Destination decoder. Consumes possibly-erased relay packets in slot order,
/// merges their headers into a first-link erasure history, re-runs the relay's
/// deterministic schedule to parse payloads, and finalizes messages strictly
/// in increasing slot order (so estimate interference can always be cancelled
/// with already-finalized messages).
class DestinationDecoder {
public:
    DestinationDecoder(const CodeSuite& suite, BudgetMode mode);

    /// pkt == nullptr marks a second-link erasure. Returns the message slots
    /// finalized by this ingest, in increasing order. Throws
    /// ChannelContractViolation when the observed erasures exceed the mode's
    /// budget, InternalFault on header conflicts.
    std::vector<int> ingest(int t, const RelayPacket* pkt);

    const SymbolVec& message(int t) const { return decoded_.at(t); }
    int finalized_slot(int t) const { return finalized_at_.at(t); }
    int next_unfinalized() const { return next_fin_; }

    /// Merged first-link history: 1 erased, 0 received, -1 not yet known.
    const std::vector<std::int8_t>& first_link_history() const { return known_view_; }

private:
    struct ReceivedPacket {
        SymbolVec payload;
        std::vector<std::pair<int, std::int64_t>> contribs;  // (source slot, offset)
    };

    bool try_finalize(int tm, int now);
    bool flags_known(int from, int to) const;
    void merge_header(int t, const std::vector<std::uint8_t>& header);
    void check_relay_budget(int t);

    const CodeSuite& suite_;
    const CodeParams& p_;
    const Field& f_;
    BudgetMode mode_;
    int next_ = 0;
    int next_fin_ = 0;
    std::vector<std::uint8_t> src_flags_;   // merged header bits (0 when unknown)
    std::vector<std::int8_t> known_view_;   // -1 unknown, else 0/1
    std::vector<std::uint8_t> rel_erased_;  // observed second-link erasures
    std::vector<std::unique_ptr<ReceivedPacket>> rx_;
    std::vector<std::vector<std::pair<std::size_t, Symbol>>> long_rx_;  // per erased slot
    std::vector<SymbolVec> decoded_;
    std::vector<int> finalized_at_;
};

}  // namespace strelay
