#pragma once

#include <vector>

#include "code_params.hpp"
#include "linalg.hpp"

namespace strelay {

/// Immutable generator tables shared by every node of a session (and safely
/// across concurrent sessions with identical parameters).
///
/// gsrc:   [n', k'] systematic generator for the source-side diagonals.
/// grelay: [n'', k''] systematic generator for the relay's per-sub-packet
///         diagonals (non-erased branch).
/// plong:  parity block of the long [*, k] code used on the erased branch,
///         wide enough for the worst schedule (T * layers_source symbols).
///         plong_log caches entry logs for binary fields.
struct CodeSuite {
    Field field;
    CodeParams params;
    Matrix gsrc;
    Matrix grelay;
    std::vector<std::uint16_t> grelay_parity_log;  // logs of grelay's parity block
    Matrix plong;
    std::vector<std::uint16_t> plong_log;   // entry logs (decoder substitution)
    // Raw entries for the row kernel, stored in column slabs of kSlab columns
    // (rows contiguous inside a slab) so segment sweeps stay cache-local.
    static constexpr std::size_t kSlab = 256;
    std::vector<std::uint16_t> plong_slab;
    const std::uint16_t* slab_row(std::size_t slab, std::size_t row) const {
        return plong_slab.data() + (slab * plong.rows + row) * kSlab;
    }

    explicit CodeSuite(const CodeParams& p);
};

/// Coordinate layout of a source packet x(t), shared by encoder and relay.
/// Layer blocks of n' symbols each; inside a block the k' systematic symbols
/// come first ordered oldest-diagonal-first, then the N1 parity symbols in the
/// same order. The systematic symbol for diagonal offset `a` (the one carrying
/// m_{layer*k'+a}(t), whose diagonal started at t-a) sits at index k'-1-a;
/// parity index b (diagonal started at t-k'-b) sits at k' + (r'-1-b).
std::size_t source_coord_sys(const CodeParams& p, std::int64_t layer, int a);
std::size_t source_coord_par(const CodeParams& p, std::int64_t layer, int b);

/// Reads m(t) back out of a non-erased source packet (systematic positions).
SymbolVec message_from_source_packet(const CodeParams& p, const SymbolVec& x);

/// Stateful per-session encoder: feed message packets in slot order, get
/// source packets out. Message packets before slot 0 are implicitly zero.
class SourceEncoder {
public:
    explicit SourceEncoder(const CodeSuite& suite);

    /// Encodes m(t) for t == slots pushed so far; throws IncompleteHistoryError
    /// on a slot gap and DimensionError on a bad message length.
    SymbolVec encode_next(const SymbolVec& message);

    int next_slot() const { return static_cast<int>(history_.size()); }

private:
    Symbol message_symbol(int t, std::int64_t index) const;  // zero for t < 0

    const CodeSuite& suite_;
    std::vector<SymbolVec> history_;
};

}  // namespace strelay
