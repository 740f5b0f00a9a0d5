#pragma once

#include <optional>
#include <string>

#include "code_params.hpp"
#include "erasure.hpp"
#include "rational.hpp"

namespace strelay {

/// Output of the greedy adversary: a witness erasure pair valid under the
/// extended budget and the non-erased ratio it forces on the
/// second link. ratio_finite = (1/tau) * sum_{t=0}^{tau+T} (1 - e_R,t);
/// ratio_total normalizes by the number of summed slots instead. When the
/// run becomes periodic the exact asymptotic ratio of one period is reported.
struct HeuristicBound {
    AdmissiblePair witness;
    Rational ratio_finite;
    Rational ratio_total;
    std::optional<Rational> ratio_periodic;
    int period = 0;
    int tau = 0;

    /// Periodic ratio when detected, finite-tau ratio otherwise.
    Rational effective() const { return ratio_periodic ? *ratio_periodic : ratio_finite; }
};

HeuristicBound adversary_heuristic(int n1, int n2, int delay, int tau);

/// Minimum non-erased second-link ratio over all periodic pairs with period
/// <= period_cap whose infinite repetition satisfies the extended budget.
/// Throws SearchTooLargeError for period_cap > 20.
struct BruteForceBound {
    Rational ratio{1};
    int period = 1;
    int period_cap = 0;
    ErasureSequence source_period;  // one period of each link
    ErasureSequence relay_period;
    AdmissiblePair unrolled_witness(int repeats) const;
};

BruteForceBound bruteforce_bound(int n1, int n2, int delay, int period_cap);

struct BoundReport {
    int n1 = 0, n2 = 0, delay = 0;
    Rational trivial;
    Rational r1;
    HeuristicBound heuristic;
    std::optional<BruteForceBound> bruteforce;
    Rational final_upper;

    std::string to_json(int indent = 2) const;
};

/// Assembles all bounds; final_upper = min(r1, trivial, heuristic, bruteforce).
/// period_cap == 0 skips the brute-force search.
BoundReport upper_bound(int n1, int n2, int delay, int tau, int period_cap);

}  // namespace strelay
