#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "recovery.hpp"
#include "source_encoder.hpp"

namespace strelay {

/// A recovered (possibly noisy) source symbol: value equals the target symbol
/// plus a known linear combination of strictly earlier message symbols.
struct Estimate {
    int source_time = 0;
    std::int64_t symbol_index = 0;
    Symbol value = 0;
    struct Ref {
        int time;
        std::int64_t symbol_index;
        Symbol coeff;
    };
    std::vector<Ref> interference;  // empty means the estimate is exact
};

/// Wire unit of the relay->destination link. Payload is always exactly n2
/// symbols (zero padded past `fill`); the header carries the first-link
/// erasure flags the relay observed for [t-T : t], index 0 = slot t-T.
///
/// Payload layout (the binary contract the destination parses): first, for
/// every non-erased x(t') with t' in [t-T : t] in increasing t', a block of
/// layers_relay symbols (sub-packet diagonals, systematic for t-t' < k'',
/// parity otherwise); then, for every erased x(t0) with t0 in [t-T : t-1] in
/// increasing t0, the long-code segment scheduled for slot t.
struct RelayPacket {
    int time = 0;
    SymbolVec payload;
    std::vector<std::uint8_t> header;
    std::int64_t fill = 0;
};

/// Relay-side encoder: ingest possibly-erased source packets in slot order,
/// maintain the estimate ledger, and emit relay packets.
class RelayNode {
public:
    explicit RelayNode(const CodeSuite& suite);

    /// x == nullptr marks a first-link erasure. Throws SequencingError on
    /// out-of-order slots, ChannelContractViolation past the N1 budget.
    void ingest(int t, const SymbolVec* x);

    /// Requires ingest(t) first.
    RelayPacket emit(int t);

    std::int64_t kappa_at(int t0, int t) const;
    bool recovery_complete(int t0) const;
    /// Ledger entries for an erased slot, in recovery order (empty otherwise).
    const std::vector<Estimate>& estimates_for(int t0) const;
    std::int64_t max_fill() const { return max_fill_; }

private:
    struct Pending {
        int batches = 0;
        std::vector<DiagonalStep> steps;  // one per batch, shared by all layers
        SymbolVec values;                 // estimate values in recovery order
        std::vector<Gf16Tables> split;    // lazy per-value product tables
        std::int64_t emitted = 0;
        mutable std::vector<Estimate> ledger;  // synthesized on demand
    };

    void append_long_code_symbols(Pending& pd, std::int64_t first, std::int64_t count,
                                  Symbol* out);

    const CodeSuite& suite_;
    const CodeParams& p_;
    const Field& f_;
    std::vector<std::uint16_t> scratch16_;
    int next_ = 0;
    std::vector<std::uint8_t> flags_;
    std::vector<SymbolVec> xs_;      // received source packets (empty if erased)
    std::vector<SymbolVec> msgs_;    // extracted messages (empty if erased)
    std::vector<SymbolVec> subpar_;  // per-sub-packet parities, layers_relay x N2
    std::map<int, Pending> pending_;
    std::int64_t max_fill_ = 0;
};

}  // namespace strelay
