#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace strelay {

/// Every derived dimension and rate of the construction for (N1, N2, T, q, c).
///
/// Source side: layers_source copies of a diagonally interleaved systematic
/// [n_prime, k_prime] MDS code. Relay side, non-erased branch: layers_relay
/// sub-packets on a [n_dprime, k_dprime] MDS diagonal. Erased branch: one long
/// systematic MDS code over all k symbols, sliced by the per-slot budgets
/// ell_j = k / (T - N2 - j) after j further erasures.
struct CodeParams {
    int n1_erasures = 0;  // N1: max source->relay erasures per window of T+1
    int n2_erasures = 0;  // N2: max relay->destination erasures per window
    int delay = 0;        // T: decoding deadline
    std::uint32_t field_order = 0;
    int multiplex = 1;  // c: codewords multiplexed per packet (header amortization)

    std::int64_t k = 0;   // message packet size
    std::int64_t n1 = 0;  // source packet size
    std::int64_t n2 = 0;  // relay packet payload size

    int k_prime = 0;  // T+1-N1-N2
    int n_prime = 0;  // T+1-N2
    std::int64_t layers_source = 0;

    int k_dprime = 0;  // T+1-N2
    int n_dprime = 0;  // T+1
    std::int64_t layers_relay = 0;

    std::vector<std::int64_t> ell_j;  // ell_j for j in [0 : N1-1]

    int header_symbols = 0;  // symbols needed to carry T+1 erasure flags
    Rational r1;
    Rational r2;             // with header overhead amortized over multiplex
    Rational r2_asymptotic;  // header overhead ignored

    std::string to_json(int indent = 2) const;
};

/// Populates CodeParams from (N1, N2, T, q, c). Throws ZeroCapacityError when
/// N1 + N2 > T, FieldTooSmallError when q <= T+1, ConfigError otherwise.
CodeParams derive_params(int n1_erasures, int n2_erasures, int delay,
                         std::uint32_t field_order = 1u << 16, int multiplex = 1);

/// min(R1, R2), the rate the construction achieves; include_header selects r2 vs
/// r2_asymptotic on the second-link side.
Rational achievable_rate(const CodeParams& p, bool include_header);

/// Rate of the channel-state-independent baseline scheme.
Rational nonadaptive_rate(int n1_erasures, int n2_erasures, int delay);

/// Point-to-point second-link bound (T+1-N2)/(T+1).
Rational trivial_bound(int n2_erasures, int delay);

/// First-link cut-set style bound (T+1-N1-N2)/(T+1-N2).
Rational r1_bound(int n1_erasures, int n2_erasures, int delay);

}  // namespace strelay
