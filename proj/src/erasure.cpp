#include "erasure.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "errors.hpp"

namespace strelay {

int ErasureSequence::count() const {
    int c = 0;
    for (auto f : flags) c += f;
    return c;
}

std::string ErasureSequence::str() const {
    std::string s(flags.size(), '0');
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) s[i] = '1';
    return s;
}

namespace {

int window_count(const ErasureSequence& s, int from, int to) {
    int c = 0;
    for (int t = std::max(0, from); t <= to && t < s.horizon; ++t) c += s.flags[t];
    return c;
}

bool placement_ok_sliding(const ErasureSequence& s, int t, int budget, int delay) {
    return window_count(s, t - delay, t - 1) + 1 <= budget;
}

// All single-link sequences whose every (T+1)-window holds at most `budget`
// erasures, lexicographically with 0 before 1.
void dfs_link(ErasureSequence& s, int t, int budget, int delay, std::uint64_t cap,
              std::uint64_t& seen, const std::function<void(const ErasureSequence&)>& visit) {
    if (t == s.horizon) {
        if (++seen > cap) throw EnumerationTooLargeError("admissible enumeration exceeds cap");
        visit(s);
        return;
    }
    s.flags[t] = 0;
    dfs_link(s, t + 1, budget, delay, cap, seen, visit);
    if (placement_ok_sliding(s, t, budget, delay)) {
        s.flags[t] = 1;
        dfs_link(s, t + 1, budget, delay, cap, seen, visit);
        s.flags[t] = 0;
    }
}

std::uint64_t count_link(int budget, int delay, int horizon, std::uint64_t cap) {
    ErasureSequence s(horizon);
    std::uint64_t seen = 0;
    dfs_link(s, 0, budget, delay, cap, seen, [](const ErasureSequence&) {});
    return seen;
}

// Placement check on the relay link under the extended budget: every anchor a
// whose window overlaps t must stay within its allowance, where an anchor with
// a first-link erasure does not count slot a itself.
bool placement_ok_lemma2(const ErasureSequence& src, const ErasureSequence& rel, int t, int n2,
                         int delay) {
    for (int a = std::max(0, t - delay); a <= t; ++a) {
        const int from = src.erased(a) ? a + 1 : a;
        int c = window_count(rel, from, t - 1) + (t >= from ? 1 : 0);
        if (c > n2) return false;
    }
    return true;
}

void dfs_rel_lemma2(const ErasureSequence& src, ErasureSequence& rel, int t, int n2, int delay,
                    std::uint64_t cap, std::uint64_t& seen,
                    const std::function<void(const ErasureSequence&)>& visit) {
    if (t == rel.horizon) {
        if (++seen > cap) throw EnumerationTooLargeError("admissible enumeration exceeds cap");
        visit(rel);
        return;
    }
    rel.flags[t] = 0;
    dfs_rel_lemma2(src, rel, t + 1, n2, delay, cap, seen, visit);
    if (placement_ok_lemma2(src, rel, t, n2, delay)) {
        rel.flags[t] = 1;
        dfs_rel_lemma2(src, rel, t + 1, n2, delay, cap, seen, visit);
        rel.flags[t] = 0;
    }
}

}  // namespace

ValidationResult validate_pair(int n1, int n2, int delay, const AdmissiblePair& pair) {
    const int horizon = std::max(pair.source_link.horizon, pair.relay_link.horizon);
    for (int t = 0; t < horizon; ++t) {
        if (window_count(pair.source_link, t, t + delay) > n1)
            return {false, t, 1, "source-link window exceeds N1"};
    }
    for (int t = 0; t < horizon; ++t) {
        if (pair.budget_mode == BudgetMode::Lemma2Extended && pair.source_link.erased(t)) {
            if (window_count(pair.relay_link, t + 1, t + delay) > n2)
                return {false, t, 2, "relay-link window [t+1:t+T] exceeds N2"};
        } else {
            if (window_count(pair.relay_link, t, t + delay) > n2)
                return {false, t, 2, "relay-link window exceeds N2"};
        }
    }
    return {};
}

std::uint64_t count_admissible_pairs(int n1, int n2, int delay, int horizon, BudgetMode mode) {
    const std::uint64_t cap = 1'000'000'000ull;
    if (mode == BudgetMode::SlidingWindow) {
        const std::uint64_t a = count_link(n1, delay, horizon, cap);
        const std::uint64_t b = count_link(n2, delay, horizon, cap);
        if (b != 0 && a > cap / b) throw EnumerationTooLargeError("pair count exceeds cap");
        return a * b;
    }
    std::uint64_t total = 0;
    ErasureSequence src(horizon);
    std::uint64_t seen_src = 0;
    dfs_link(src, 0, n1, delay, cap, seen_src, [&](const ErasureSequence& s) {
        ErasureSequence rel(horizon);
        std::uint64_t seen_rel = 0;
        dfs_rel_lemma2(s, rel, 0, n2, delay, cap - total, seen_rel,
                       [](const ErasureSequence&) {});
        total += seen_rel;
    });
    return total;
}

void enumerate_admissible_pairs(int n1, int n2, int delay, int horizon, BudgetMode mode,
                                std::uint64_t cap,
                                const std::function<void(const AdmissiblePair&)>& visit) {
    if (count_admissible_pairs(n1, n2, delay, horizon, mode) > cap)
        throw EnumerationTooLargeError("admissible pair count exceeds cap");
    AdmissiblePair pair;
    pair.budget_mode = mode;
    ErasureSequence src(horizon);
    std::uint64_t seen_src = 0;
    dfs_link(src, 0, n1, delay, UINT64_MAX, seen_src, [&](const ErasureSequence& s) {
        pair.source_link = s;
        ErasureSequence rel(horizon);
        std::uint64_t seen_rel = 0;
        if (mode == BudgetMode::SlidingWindow) {
            dfs_link(rel, 0, n2, delay, UINT64_MAX, seen_rel, [&](const ErasureSequence& r) {
                pair.relay_link = r;
                visit(pair);
            });
        } else {
            dfs_rel_lemma2(s, rel, 0, n2, delay, UINT64_MAX, seen_rel,
                           [&](const ErasureSequence& r) {
                               pair.relay_link = r;
                               visit(pair);
                           });
        }
    });
}

AdmissiblePair sample_pair(int n1, int n2, int delay, int horizon, std::uint64_t seed,
                           PatternKind kind) {
    AdmissiblePair pair;
    pair.budget_mode = BudgetMode::SlidingWindow;
    pair.source_link = ErasureSequence(horizon);
    pair.relay_link = ErasureSequence(horizon);

    if (kind == PatternKind::RandomGreedy) {
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
        auto unit = [&rng]() { return double(rng() >> 11) * (1.0 / 9007199254740992.0); };
        // Per-seed density mixes sparse and near-budget patterns.
        const double density = 0.35 + 0.65 * unit();
        const double p1 = std::min(0.95, density * double(n1) / (delay + 1));
        const double p2 = std::min(0.95, density * double(n2) / (delay + 1));
        for (int t = 0; t < horizon; ++t) {
            if (unit() < p1 && placement_ok_sliding(pair.source_link, t, n1, delay))
                pair.source_link.flags[t] = 1;
            if (unit() < p2 && placement_ok_sliding(pair.relay_link, t, n2, delay))
                pair.relay_link.flags[t] = 1;
        }
    } else {
        const int step = kind == PatternKind::Burst ? 1 : 2;
        for (int start = 4; start < horizon; start += 2 * (delay + 1)) {
            for (int i = 0; i < n1; ++i) {
                const int t = start + step * i;
                if (t < horizon) pair.source_link.flags[t] = 1;
            }
        }
    }

    auto check = validate_pair(n1, n2, delay, pair);
    if (!check.ok) throw InternalFault("pattern generator produced an inadmissible pair");
    return pair;
}

void write_pattern_file(const std::string& path, const AdmissiblePair& pair) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open pattern file for writing: " + path);
    out << pair.source_link.str() << "\n" << pair.relay_link.str() << "\n";
}

AdmissiblePair read_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    std::string a, b;
    if (!std::getline(in, a) || !std::getline(in, b))
        throw std::runtime_error("pattern file must have two lines");
    if (a.size() != b.size()) throw std::runtime_error("pattern lines must have equal length");
    AdmissiblePair pair;
    pair.source_link = ErasureSequence(static_cast<int>(a.size()));
    pair.relay_link = ErasureSequence(static_cast<int>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] != '0' && a[i] != '1') || (b[i] != '0' && b[i] != '1'))
            throw std::runtime_error("pattern lines must contain only '0'/'1'");
        pair.source_link.flags[i] = a[i] == '1';
        pair.relay_link.flags[i] = b[i] == '1';
    }
    return pair;
}

}  // namespace strelay
