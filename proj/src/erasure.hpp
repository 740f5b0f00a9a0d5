#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace strelay {

/// Binary erasure indicator sequence for one link over a finite horizon.
/// Slots outside [0, horizon) are treated as not erased.
struct ErasureSequence {
    int horizon = 0;
    std::vector<std::uint8_t> flags;

    ErasureSequence() = default;
    explicit ErasureSequence(int h) : horizon(h), flags(h, 0) {}

    bool erased(int t) const { return t >= 0 && t < horizon && flags[t] != 0; }
    int count() const;
    std::string str() const;  // '0'/'1' per slot
};

/// Window budget semantics. SlidingWindow: at most N1 / N2 erasures in every
/// window of T+1 slots on the respective link. Lemma2Extended additionally
/// allows a second-link erasure at slot t "for free" whenever the first link
/// is erased at t (the budget then applies to [t+1 : t+T]).
enum class BudgetMode { SlidingWindow, Lemma2Extended };

struct AdmissiblePair {
    ErasureSequence source_link;
    ErasureSequence relay_link;
    BudgetMode budget_mode = BudgetMode::SlidingWindow;
};

struct ValidationResult {
    bool ok = true;
    int window_start = -1;
    int link = 0;  // 1 = source link, 2 = relay link
    std::string what;
};

ValidationResult validate_pair(int n1, int n2, int delay, const AdmissiblePair& pair);

/// Number of admissible pairs for the given budgets and horizon.
std::uint64_t count_admissible_pairs(int n1, int n2, int delay, int horizon, BudgetMode mode);

/// Visits every admissible pair exactly once in deterministic order.
/// Throws EnumerationTooLargeError when the count exceeds `cap`.
void enumerate_admissible_pairs(int n1, int n2, int delay, int horizon, BudgetMode mode,
                                std::uint64_t cap,
                                const std::function<void(const AdmissiblePair&)>& visit);

enum class PatternKind { RandomGreedy, Burst, Spaced };

/// Deterministic seeded generation; output always validates in sliding-window
/// mode. Burst/Spaced erase only the first link, mirroring the worked burst
/// and spaced scenarios; RandomGreedy draws both links with a per-seed density.
AdmissiblePair sample_pair(int n1, int n2, int delay, int horizon, std::uint64_t seed,
                           PatternKind kind);

/// Text format: two lines of '0'/'1' of equal length; line 1 = source link.
void write_pattern_file(const std::string& path, const AdmissiblePair& pair);
AdmissiblePair read_pattern_file(const std::string& path);

}  // namespace strelay
