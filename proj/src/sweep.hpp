#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bounds.hpp"

namespace strelay {

/// One randomly drawn parameter set with every bound/rate we compare.
struct SweepRow {
    int n1 = 0, n2 = 0, delay = 0;
    Rational trivial;
    Rational nonadaptive;
    Rational upper;          // min(r1, trivial, adversary heuristic)
    Rational rate;           // achievable, header overhead ignored
    Rational rate_with_header;
    Rational ratio;          // rate / upper
};

/// Draws `samples` parameter sets with 1 <= N1 < N2 <= 10 and
/// N1+N2 <= T <= N1+N2+10, computes all quantities exactly, and returns rows
/// sorted by the trivial bound in increasing order. Deterministic per seed.
std::vector<SweepRow> run_sweep(int samples, std::uint64_t seed, int multiplex = 1,
                                int tau_per_window = 150);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows, int indent = 2);

}  // namespace strelay
