#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace strelay {

/// Systematic MDS generator [I_k | P] with P a k x (n-k) Cauchy block:
/// P[i][j] = 1 / (element(i) - element(k + j)). Every square submatrix of a
/// Cauchy matrix is invertible, so any k columns of the result are linearly
/// independent. Deterministic for fixed (q, n, k), and P is prefix-nested in n:
/// growing n appends parity columns without changing existing ones.
/// Throws CodeLengthExceedsFieldError when n >= q.
Matrix make_systematic_mds_generator(const Field& f, std::size_t n, std::size_t k);

/// Single parity entry of the generator family above, without materializing it.
Symbol cauchy_parity_entry(const Field& f, std::size_t k, std::size_t row, std::size_t col);

/// message (length k) -> codeword (length n); first k symbols are the message.
SymbolVec mds_encode(const Field& f, const Matrix& g, const SymbolVec& message);

/// Recovers the unique message consistent with the observed coordinates.
/// positions must be distinct with |positions| >= k; surplus coordinates are
/// checked against the solution (DecodeInconsistencyError on mismatch).
SymbolVec mds_decode_from_subset(const Field& f, const Matrix& g,
                                 const std::vector<std::size_t>& positions,
                                 const SymbolVec& values);

/// Erasure decoder specialized to the Cauchy generator family, O(k*e + m^2)
/// for m missing systematic symbols instead of a cubic elimination. Used on
/// the decode hot path; equivalence with mds_decode_from_subset is pinned by
/// tests. `received` holds (position, value) pairs, at least k of them.
SymbolVec cauchy_decode(const Field& f, std::size_t k,
                        const std::vector<std::pair<std::size_t, Symbol>>& received);

/// Same decoder with precomputed logs of the parity entries (binary fields
/// only): parity_log[i * parity_stride + c] = log of the entry at (row i,
/// parity column c). Cuts the substitution of known symbols to one exp lookup
/// per element.
SymbolVec cauchy_decode_logtab(const Field& f, std::size_t k,
                               const std::vector<std::pair<std::size_t, Symbol>>& received,
                               const std::uint16_t* parity_log, std::size_t parity_stride);

/// Fastest path: the substitution of known symbols runs through the split-
/// table row kernel over the contiguous runs of received parity columns.
/// `slab` holds the raw parity entries in column slabs of `slab_width`
/// (rows contiguous within a slab), k rows each.
SymbolVec cauchy_decode_slab(const Field& f, std::size_t k,
                             const std::vector<std::pair<std::size_t, Symbol>>& received,
                             const std::uint16_t* slab, std::size_t slab_width);

}  // namespace strelay
