#include <doctest.h>

#include <array>
#include <functional>
#include <random>

#include "erasure.hpp"
#include "relay.hpp"

using namespace strelay;

namespace {

struct Driven {
    std::vector<SymbolVec> messages;
    std::vector<RelayPacket> packets;
};

ErasureSequence seq(const std::string& s) {
    ErasureSequence e(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) e.flags[i] = s[i] == '1';
    return e;
}

// Runs source encoder + relay over the given first-link pattern with seeded
// random messages; zero messages when zero_msgs is set.
Driven drive_relay(const CodeSuite& suite, RelayNode& relay, const ErasureSequence& src,
                   int slots, std::uint64_t seed, bool zero_msgs = false) {
    std::mt19937_64 rng(seed);
    SourceEncoder enc(suite);
    Driven d;
    for (int t = 0; t < slots; ++t) {
        SymbolVec m(static_cast<std::size_t>(suite.params.k), 0);
        if (!zero_msgs)
            for (auto& s : m) s = static_cast<Symbol>(rng() % suite.field.size());
        d.messages.push_back(m);
        SymbolVec x = enc.encode_next(m);
        relay.ingest(t, src.erased(t) ? nullptr : &x);
        d.packets.push_back(relay.emit(t));
    }
    return d;
}

}  // namespace

TEST_CASE("all-zero messages produce all-zero source packets") {
    const CodeSuite suite(derive_params(2, 3, 6));
    SourceEncoder enc(suite);
    for (int t = 0; t < 10; ++t) {
        const SymbolVec x = enc.encode_next(SymbolVec(24, 0));
        CHECK(x == SymbolVec(48, 0));
    }
}

TEST_CASE("single-layer structure for (1,1,2): [m_i(t), parity of m_i(t-1)]") {
    // k' = 1, n' = 2, two layers; the 1x1 parity block of the Cauchy generator
    // over GF(2^16) is inv(0 xor 1) = 1, so the parity is m_i(t-1) itself.
    const CodeSuite suite(derive_params(1, 1, 2));
    REQUIRE(suite.gsrc.at(0, 1) == 1);
    SourceEncoder enc(suite);
    std::mt19937_64 rng(2);
    SymbolVec prev(2, 0);
    for (int t = 0; t < 6; ++t) {
        SymbolVec m{Symbol(rng() % 65536), Symbol(rng() % 65536)};
        const SymbolVec x = enc.encode_next(m);
        REQUIRE(x.size() == 4);
        CHECK(x[0] == m[0]);
        CHECK(x[1] == prev[0]);
        CHECK(x[2] == m[1]);
        CHECK(x[3] == prev[1]);
        prev = m;
    }
}

TEST_CASE("message extraction from the systematic coordinates") {
    const CodeSuite suite(derive_params(2, 3, 6));
    SourceEncoder enc(suite);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
        SymbolVec m(24);
        for (auto& s : m) s = Symbol(rng() % 65536);
        CHECK(message_from_source_packet(suite.params, enc.encode_next(m)) == m);
    }
}

TEST_CASE("source encoder rejects bad input") {
    const CodeSuite suite(derive_params(1, 2, 4));
    SourceEncoder enc(suite);
    CHECK_THROWS_AS(enc.encode_next(SymbolVec(5, 0)), DimensionError);
}

TEST_CASE("segment-size schedule reproduces the worked traces") {
    const CodeParams p = derive_params(2, 3, 6);
    SUBCASE("burst erasures {4,5}") {
        const ErasureSequence src = seq("000011000000");
        const FlagsView fv{src.flags.data(), src.horizon};
        CHECK(alpha_schedule(p, fv, 4, 6) ==
              std::vector<std::int64_t>{0, 12, 12, 12, 12, 12});
        CHECK(alpha_schedule(p, fv, 5, 6) == std::vector<std::int64_t>{8, 8, 8, 8, 8, 8});
    }
    SUBCASE("spaced erasures {4,6}") {
        const ErasureSequence src = seq("000010100000");
        const FlagsView fv{src.flags.data(), src.horizon};
        CHECK(alpha_schedule(p, fv, 4, 6) ==
              std::vector<std::int64_t>{8, 4, 12, 12, 12, 12});
    }
    SUBCASE("(1,2,4) with no further erasures") {
        const CodeParams q = derive_params(1, 2, 4);
        const ErasureSequence src = seq("000100000000");
        const FlagsView fv{src.flags.data(), src.horizon};
        CHECK(alpha_schedule(q, fv, 3, 4) == std::vector<std::int64_t>{3, 3, 3, 3});
    }
}

TEST_CASE("relay ledger after the burst: noisy estimates of m(5), clean of m(4)") {
    const CodeSuite suite(derive_params(2, 3, 6));
    {
        // Up to slot 6 only the first batch of each erased slot exists.
        RelayNode relay(suite);
        const auto d = drive_relay(suite, relay, seq("0000110"), 7, 42);

        CHECK(relay.kappa_at(4, 5) == 0);
        CHECK(relay.kappa_at(4, 6) == 12);
        CHECK(relay.kappa_at(5, 6) == 12);

        const auto& e5 = relay.estimates_for(5);
        REQUIRE(e5.size() == 12);
        for (std::int64_t layer = 0; layer < 12; ++layer) {
            const Estimate& est = e5[layer];
            CHECK(est.source_time == 5);
            CHECK(est.symbol_index == 2 * layer + 1);  // second symbol of each layer
            REQUIRE(est.interference.size() == 1);
            CHECK(est.interference[0].time == 4);
            CHECK(est.interference[0].symbol_index == 2 * layer);
            CHECK(est.interference[0].coeff != 0);
            // Definition of an estimate: cancelling the earlier message
            // recovers the exact symbol.
            const Symbol cancelled = suite.field.sub(
                est.value,
                suite.field.mul(est.interference[0].coeff,
                                d.messages[4][est.interference[0].symbol_index]));
            CHECK(cancelled == d.messages[5][est.symbol_index]);
        }

        const auto& e4 = relay.estimates_for(4);
        REQUIRE(e4.size() == 12);
        for (std::int64_t layer = 0; layer < 12; ++layer) {
            CHECK(e4[layer].symbol_index == 2 * layer + 1);
            CHECK(e4[layer].interference.empty());
            CHECK(e4[layer].value == d.messages[4][2 * layer + 1]);
        }
        CHECK(!relay.recovery_complete(4));
    }
    {
        // Slot 7 completes m(4) (same seed, so the same messages).
        RelayNode relay(suite);
        const auto d = drive_relay(suite, relay, seq("00001100"), 8, 42);
        const auto& e4 = relay.estimates_for(4);
        REQUIRE(e4.size() == 24);
        for (std::int64_t layer = 0; layer < 12; ++layer) {
            CHECK(e4[12 + layer].symbol_index == 2 * layer);
            CHECK(e4[12 + layer].interference.empty());
            CHECK(e4[12 + layer].value == d.messages[4][2 * layer]);
        }
        CHECK(relay.recovery_complete(4));
        CHECK(relay.recovery_complete(5));
    }
}

TEST_CASE("relay ledger for spaced erasures completes m(4) at slot 7") {
    const CodeSuite suite(derive_params(2, 3, 6));
    RelayNode relay(suite);
    const auto d = drive_relay(suite, relay, seq("00001010"), 8, 43);
    CHECK(relay.kappa_at(4, 5) == 12);
    CHECK(relay.kappa_at(4, 6) == 12);
    CHECK(relay.kappa_at(4, 7) == 24);
    const auto& e4 = relay.estimates_for(4);
    REQUIRE(e4.size() == 24);
    for (std::int64_t layer = 0; layer < 12; ++layer) {
        CHECK(e4[layer].symbol_index == 2 * layer + 1);
        CHECK(e4[layer].value == d.messages[4][2 * layer + 1]);
        CHECK(e4[12 + layer].symbol_index == 2 * layer);
        CHECK(e4[12 + layer].value == d.messages[4][2 * layer]);
        CHECK(e4[12 + layer].interference.empty());
    }
}

TEST_CASE("no erasures: ledger stays empty, steady-state fill is (T+1)*layers_relay") {
    const CodeSuite suite(derive_params(2, 3, 6));
    RelayNode relay(suite);
    const auto d = drive_relay(suite, relay, ErasureSequence(12), 12, 44);
    CHECK(relay.estimates_for(3).empty());
    CHECK(d.packets[0].fill == 6);  // one diagonal started
    for (int t = 6; t < 12; ++t) CHECK(d.packets[t].fill == 42);
    CHECK(relay.max_fill() == 42);
}

TEST_CASE("burst hits the worst-case packet length exactly") {
    const CodeSuite suite(derive_params(2, 3, 6));
    RelayNode relay(suite);
    const auto d = drive_relay(suite, relay, seq("000011000000"), 12, 45);
    // At slot 6: five non-erased contributions (5*6) + 12 for slot 4 + 8 for
    // slot 5 equals n2 = 50.
    CHECK(d.packets[6].fill == 50);
    CHECK(relay.max_fill() == 50);
    CHECK(suite.params.n2 == 50);
}

TEST_CASE("header mirrors the observed first-link flags") {
    const CodeSuite suite(derive_params(2, 3, 6));
    RelayNode relay(suite);
    const auto d = drive_relay(suite, relay, seq("0000110000"), 10, 46);
    const RelayPacket& pkt = d.packets[6];
    REQUIRE(pkt.header.size() == 7);
    CHECK(pkt.header == std::vector<std::uint8_t>{0, 0, 0, 0, 1, 1, 0});
    // header[d] covers slot t-T+d; slot 0 index maps negative slots away.
    const RelayPacket& early = d.packets[2];
    CHECK(early.header == std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("schedule feasibility and fill bound over random admissible patterns") {
    const CodeParams p = derive_params(2, 3, 6);
    const CodeSuite suite(p);
    for (std::uint64_t s = 0; s < 25; ++s) {
        const AdmissiblePair pair = sample_pair(2, 3, 6, 40, s, PatternKind::RandomGreedy);
        const FlagsView fv{pair.source_link.flags.data(), pair.source_link.horizon};
        RelayNode relay(suite);
        const auto d = drive_relay(suite, relay, pair.source_link, 40, 100 + s);
        for (const auto& pkt : d.packets) CHECK(pkt.fill <= p.n2);
        for (int t0 = 0; t0 < 34; ++t0) {
            if (!pair.source_link.erased(t0)) continue;
            std::int64_t sum = 0;
            for (int i = 1; i <= p.delay; ++i) {
                sum += alpha_step(p, fv, t0, i, sum);
                // Estimates consumed so far never outrun the ones recovered;
                // beyond k the segments carry parities, not estimates.
                CHECK(std::min(sum, p.k) <= kappa(p, fv, t0, t0 + i));
            }
        }
    }
}

TEST_CASE("any N2 second-link losses leave at least k long-code symbols") {
    // Counting argument behind recoverability, checked numerically: for every
    // erased slot and every N2-subset of its delivery window, the surviving
    // segment sizes sum to at least k.
    for (auto [n1, n2, t] : std::vector<std::array<int, 3>>{{1, 2, 4}, {2, 3, 6}}) {
        const CodeParams p = derive_params(n1, n2, t);
        int patterns = 0;
        enumerate_admissible_pairs(n1, 0, t, 2 * (t + 1), BudgetMode::SlidingWindow,
                                   1u << 22, [&](const AdmissiblePair& pair) {
            ++patterns;
            const FlagsView fv{pair.source_link.flags.data(), pair.source_link.horizon};
            for (int t0 = 0; t0 + t < pair.source_link.horizon; ++t0) {
                if (!pair.source_link.erased(t0)) continue;
                const auto alphas = alpha_schedule(p, fv, t0, t);
                std::vector<int> idx(t);
                for (int i = 0; i < t; ++i) idx[i] = i;
                // all N2-subsets of the T delivery slots
                std::vector<int> pick(n2, 0);
                std::function<void(int, int)> rec = [&](int from, int depth) {
                    if (depth == n2) {
                        std::int64_t sum = 0;
                        for (int i = 0; i < t; ++i) {
                            bool dropped = false;
                            for (int d = 0; d < n2; ++d) dropped |= pick[d] == i;
                            if (!dropped) sum += alphas[i];
                        }
                        CHECK(sum >= p.k);
                        return;
                    }
                    for (int i = from; i < t; ++i) {
                        pick[depth] = i;
                        rec(i + 1, depth + 1);
                    }
                };
                rec(0, 0);
            }
        });
        CHECK(patterns > 0);
    }
}

TEST_CASE("relay completes recovery of every erased slot by t + T - N2") {
    const CodeSuite suite(derive_params(2, 3, 6));
    const CodeParams& p = suite.params;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const AdmissiblePair pair = sample_pair(2, 3, 6, 30, s, PatternKind::RandomGreedy);
        RelayNode relay(suite);
        drive_relay(suite, relay, pair.source_link, 30, 300 + s);
        for (int t0 = 0; t0 + p.delay < 30; ++t0) {
            if (!pair.source_link.erased(t0)) continue;
            CHECK(relay.kappa_at(t0, t0 + p.delay - p.n2_erasures) == p.k);
            CHECK(relay.recovery_complete(t0));
        }
    }
}

TEST_CASE("relay rejects out-of-order ingest") {
    const CodeSuite suite(derive_params(1, 1, 2));
    RelayNode relay(suite);
    SourceEncoder enc(suite);
    SymbolVec x = enc.encode_next(SymbolVec(2, 0));
    relay.ingest(0, &x);
    relay.emit(0);
    CHECK_THROWS_AS(relay.ingest(2, nullptr), SequencingError);
}
