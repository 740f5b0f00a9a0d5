#include "bounds.hpp"

#include <json.hpp>
#include <unordered_map>

#include "errors.hpp"

namespace strelay {

HeuristicBound adversary_heuristic(int n1, int n2, int delay, int tau) {
    if (tau < delay + 1) throw ConfigError("tau must be at least T+1");
    const int total = tau + delay + 1;
    std::vector<std::uint8_t> es(total, 0), er(total, 0);

    // Greedy adversary: erase the second link at the end of every window that
    // still has budget, and spend a first-link erasure exactly where it buys
    // one extra second-link erasure in the same window.
    std::unordered_map<std::uint64_t, int> seen_states;
    int cycle_from = -1, cycle_to = -1;
    std::vector<int> nonerased_prefix(tau + 2, 0);  // over e_R[0:t)

    for (int t = 0; t <= tau; ++t) {
        nonerased_prefix[t + 1] = nonerased_prefix[t] + (er[t] ? 0 : 1);
        if (t >= delay && cycle_from < 0) {
            std::uint64_t key = 0;
            for (int d = 1; d <= delay; ++d) key = key << 1 | es[t - d];
            for (int d = 0; d < delay; ++d) key = key << 1 | er[t + d];
            auto [it, fresh] = seen_states.emplace(key, t);
            if (!fresh) {
                cycle_from = it->second;
                cycle_to = t;
            }
        }

        int num_r = 0;
        for (int d = 0; d <= delay; ++d) num_r += er[t + d];
        if (er[t]) {
            int num_s = 0;
            for (int u = std::max(0, t - delay); u <= t; ++u) num_s += es[u];
            if (num_r == n2 && num_s < n1) es[t] = 1;
        }
        if ((es[t] && num_r <= n2) || num_r < n2) er[t + delay] = 1;
    }

    HeuristicBound hb;
    hb.tau = tau;
    hb.witness.budget_mode = BudgetMode::Lemma2Extended;
    hb.witness.source_link.horizon = total;
    hb.witness.source_link.flags = es;
    hb.witness.relay_link.horizon = total;
    hb.witness.relay_link.flags = er;
    std::int64_t nonerased = 0;
    for (int t = 0; t < total; ++t) nonerased += er[t] ? 0 : 1;
    hb.ratio_finite = Rational(nonerased, tau);
    hb.ratio_total = Rational(nonerased, total);
    if (cycle_from >= 0) {
        hb.period = cycle_to - cycle_from;
        hb.ratio_periodic =
            Rational(nonerased_prefix[cycle_to] - nonerased_prefix[cycle_from], hb.period);
    }
    return hb;
}

namespace {

// Window counts of the infinite repetition of a period-p pattern.
int wrapped_count(const std::vector<std::uint8_t>& flags, int from, int len) {
    const int p = static_cast<int>(flags.size());
    int c = 0;
    for (int d = 0; d < len; ++d) c += flags[(from + d) % p];
    return c;
}

}  // namespace

AdmissiblePair BruteForceBound::unrolled_witness(int repeats) const {
    AdmissiblePair pair;
    pair.budget_mode = BudgetMode::Lemma2Extended;
    const int h = period * repeats;
    pair.source_link = ErasureSequence(h);
    pair.relay_link = ErasureSequence(h);
    for (int t = 0; t < h; ++t) {
        pair.source_link.flags[t] = source_period.flags[t % period];
        pair.relay_link.flags[t] = relay_period.flags[t % period];
    }
    return pair;
}

BruteForceBound bruteforce_bound(int n1, int n2, int delay, int period_cap) {
    if (period_cap < 1) throw ConfigError("period cap must be positive");
    if (period_cap > 20)
        throw SearchTooLargeError("period cap above 20 is not tractable by enumeration");

    BruteForceBound best;
    best.period_cap = period_cap;
    best.source_period = ErasureSequence(1);
    best.relay_period = ErasureSequence(1);

    std::vector<std::uint8_t> er, es;
    for (int p = 1; p <= period_cap; ++p) {
        er.assign(p, 0);
        es.assign(p, 0);
        for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
            int erased = 0;
            for (int t = 0; t < p; ++t) {
                er[t] = (mask >> t) & 1;
                erased += er[t];
            }
            const Rational ratio(p - erased, p);
            if (!(ratio < best.ratio)) continue;

            // A first-link erasure is forced exactly where a window holds
            // N2+1 second-link erasures; more than that is unfixable.
            bool ok = true;
            for (int t = 0; t < p && ok; ++t) {
                const int c = wrapped_count(er, t, delay + 1);
                if (c <= n2) {
                    es[t] = 0;
                } else if (c == n2 + 1 && er[t]) {
                    es[t] = 1;
                } else {
                    ok = false;
                }
            }
            if (!ok) continue;
            for (int t = 0; t < p && ok; ++t)
                if (wrapped_count(es, t, delay + 1) > n1) ok = false;
            if (!ok) continue;

            best.ratio = ratio;
            best.period = p;
            best.source_period.horizon = p;
            best.source_period.flags = es;
            best.relay_period.horizon = p;
            best.relay_period.flags = er;
        }
    }
    return best;
}

BoundReport upper_bound(int n1, int n2, int delay, int tau, int period_cap) {
    BoundReport rep;
    rep.n1 = n1;
    rep.n2 = n2;
    rep.delay = delay;
    rep.trivial = trivial_bound(n2, delay);
    rep.r1 = r1_bound(n1, n2, delay);
    rep.heuristic = adversary_heuristic(n1, n2, delay, tau);
    rep.final_upper = min(rep.r1, min(rep.trivial, rep.heuristic.effective()));
    if (period_cap > 0) {
        rep.bruteforce = bruteforce_bound(n1, n2, delay, period_cap);
        rep.final_upper = min(rep.final_upper, rep.bruteforce->ratio);
    }
    return rep;
}

namespace {

nlohmann::json rational_json(const Rational& r) {
    return {{"num", r.num()}, {"den", r.den()}, {"approx", r.to_double()}};
}

}  // namespace

std::string BoundReport::to_json(int indent) const {
    nlohmann::json j{
        {"n1", n1},
        {"n2", n2},
        {"delay", delay},
        {"trivial", rational_json(trivial)},
        {"r1", rational_json(r1)},
        {"final_upper", rational_json(final_upper)},
    };
    j["heuristic"] = {
        {"tau", heuristic.tau},
        {"ratio_finite", rational_json(heuristic.ratio_finite)},
        {"ratio_total", rational_json(heuristic.ratio_total)},
        {"witness_source", heuristic.witness.source_link.str()},
        {"witness_relay", heuristic.witness.relay_link.str()},
    };
    if (heuristic.ratio_periodic) {
        j["heuristic"]["ratio_periodic"] = rational_json(*heuristic.ratio_periodic);
        j["heuristic"]["period"] = heuristic.period;
    }
    if (bruteforce) {
        j["bruteforce"] = {
            {"ratio", rational_json(bruteforce->ratio)},
            {"period", bruteforce->period},
            {"period_cap", bruteforce->period_cap},
            {"witness_source_period", bruteforce->source_period.str()},
            {"witness_relay_period", bruteforce->relay_period.str()},
        };
    }
    return j.dump(indent);
}

}  // namespace strelay
