#pragma once

#include <cstdint>
#include <vector>

#include "code_params.hpp"
#include "linalg.hpp"

namespace strelay {

/// First-link erasure flags over [0, n). Slots outside are never erased
/// (message packets before slot 0 are implicitly zero and always "available").
struct FlagsView {
    const std::uint8_t* f = nullptr;
    int n = 0;
    bool erased(int t) const { return t >= 0 && t < n && f[t] != 0; }
    int count_erased(int from, int to) const {
        int c = 0;
        for (int t = std::max(0, from); t <= to && t < n; ++t) c += f[t];
        return c;
    }
    int count_nonerased(int from, int to) const {
        from = std::max(0, from);
        if (to >= n || to < from) return 0;
        return (to - from + 1) - count_erased(from, to);
    }
};

/// Cumulative number of estimates of m(t0) available to the relay at slot t:
/// layers_source new estimates per non-erased slot after t0, capped at k.
std::int64_t kappa(const CodeParams& p, FlagsView flags, int t0, int t);

/// One step of the erased-branch segment-size schedule: the number of long-code
/// symbols for erased slot t0 carried at slot t0+i, given the sizes already
/// emitted (sum_prev = sum of the previous i-1 sizes). Greedy rule: up to
/// ell_{j} symbols where j counts erasures in [t0+1 : t0+i-1], limited by the
/// estimates actually in hand unless the slot is non-erased or all k exist.
std::int64_t alpha_step(const CodeParams& p, FlagsView flags, int t0, int i,
                        std::int64_t sum_prev);

/// Sizes for i in [1 : imax] plus their running prefix sums.
std::vector<std::int64_t> alpha_schedule(const CodeParams& p, FlagsView flags, int t0, int imax);

/// Slot of the j-th non-erased packet after t0 (1-based), or -1 if it does not
/// occur by `limit`.
int nth_nonerased_after(FlagsView flags, int t0, int j, int limit);

enum class CoordRole { Systematic, Parity };

/// How to form one new estimate of a symbol of m(t0), expressed layer-locally.
/// The same step applies to every layer: only the coordinate mapping differs.
/// value = sum over recipe of coeff * (observed source-packet symbol), and
/// value = m_{target_local}(t0) + sum over interference of coeff * m_a(time).
struct DiagonalStep {
    int target_local = 0;
    struct Term {
        int time;
        int local_index;  // systematic offset a within the diagonal
        Symbol coeff;
    };
    struct RecipeTerm {
        int time;
        CoordRole role;
        int index;  // systematic offset a, or parity index b
        Symbol coeff;
    };
    std::vector<Term> interference;      // strictly earlier, erased slots only
    std::vector<RecipeTerm> recipe;      // non-erased observations
};

/// Solves the diagonal that yields the j-th batch of estimates for erased slot
/// t0 (j in [1 : k']), evaluated at the j-th non-erased slot after t0. Pure in
/// the erasure pattern, so relay and destination derive identical structure.
DiagonalStep compute_diagonal_step(const Field& f, const CodeParams& p, const Matrix& gsrc,
                                   FlagsView flags, int t0, int j);

}  // namespace strelay
