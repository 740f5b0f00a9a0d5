#include <doctest.h>

#include <array>
#include <random>

#include "bounds.hpp"
#include "errors.hpp"
#include "code_params.hpp"

using namespace strelay;

TEST_CASE("adversary heuristic reproduces the 4/7 bound for (1,2,4)") {
    const HeuristicBound hb = adversary_heuristic(1, 2, 4, 10000);
    REQUIRE(hb.ratio_periodic.has_value());
    CHECK(*hb.ratio_periodic == Rational(4, 7));
    // finite-tau ratio within (T+1)/tau of the asymptote
    const Rational target(4, 7), slack(5, 10000);
    CHECK(hb.ratio_finite < target + slack);
    CHECK(target - slack < hb.ratio_finite);
    CHECK(validate_pair(1, 2, 4, hb.witness).ok);
    CHECK(trivial_bound(2, 4) == Rational(3, 5));
}

TEST_CASE("heuristic degenerates to the trivial bound when N1 = 0") {
    CHECK(*adversary_heuristic(0, 2, 4, 2000).ratio_periodic == Rational(3, 5));
    CHECK(*adversary_heuristic(0, 3, 6, 2000).ratio_periodic == Rational(4, 7));
}

TEST_CASE("heuristic witnesses satisfy the extended budget across parameters") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n1 = 1 + int(rng() % 5);
        const int n2 = n1 + 1 + int(rng() % 5);
        const int t = n1 + n2 + int(rng() % 8);
        const HeuristicBound hb = adversary_heuristic(n1, n2, t, 120 * (t + 1));
        CHECK(validate_pair(n1, n2, t, hb.witness).ok);
        CHECK(hb.ratio_periodic.has_value());
        CHECK(hb.effective() <= trivial_bound(n2, t));
    }
}

TEST_CASE("brute force bound: (1,2,4) with period cap 7") {
    const BruteForceBound bf = bruteforce_bound(1, 2, 4, 7);
    CHECK(bf.ratio == Rational(4, 7));  // the period-7 adversary is optimal here
    CHECK(bf.period == 7);
    CHECK(validate_pair(1, 2, 4, bf.unrolled_witness(4)).ok);
}

TEST_CASE("brute force bound: degenerate cases") {
    // Period cap too small for any valid erasure: the empty adversary wins.
    CHECK(bruteforce_bound(1, 2, 4, 1).ratio == Rational(1));
    CHECK_THROWS_AS(bruteforce_bound(1, 2, 4, 21), SearchTooLargeError);
}

TEST_CASE("brute force never beats the heuristic upward") {
    for (auto [n1, n2, t, cap] :
         std::vector<std::array<int, 4>>{{1, 2, 4, 8}, {1, 1, 2, 8}, {2, 3, 6, 14}}) {
        const BruteForceBound bf = bruteforce_bound(n1, n2, t, cap);
        const HeuristicBound hb = adversary_heuristic(n1, n2, t, 4000);
        CHECK(bf.ratio <= hb.effective());
        CHECK(bf.ratio <= trivial_bound(n2, t));
        CHECK(validate_pair(n1, n2, t, bf.unrolled_witness(4)).ok);
    }
}

TEST_CASE("assembled report for (1,2,4)") {
    const BoundReport rep = upper_bound(1, 2, 4, 10000, 8);
    CHECK(rep.trivial == Rational(3, 5));
    CHECK(rep.r1 == Rational(2, 3));
    CHECK(rep.final_upper <= Rational(4, 7));
    const CodeParams p = derive_params(1, 2, 4);
    CHECK(achievable_rate(p, false) <= rep.final_upper);
}

TEST_CASE("bound sandwich across sampled parameters") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        const int n1 = 1 + int(rng() % 5);
        const int n2 = n1 + 1 + int(rng() % 5);
        const int t = n1 + n2 + int(rng() % 8);
        const BoundReport rep = upper_bound(n1, n2, t, 150 * (t + 1), 0);
        const CodeParams p = derive_params(n1, n2, t);
        CHECK(achievable_rate(p, false) <= rep.final_upper);
        CHECK(rep.final_upper <= rep.trivial);
        CHECK(nonadaptive_rate(n1, n2, t) < achievable_rate(p, false));
    }
}

TEST_CASE("reports serialize to json") {
    const BoundReport rep = upper_bound(1, 2, 4, 2000, 7);
    const std::string js = rep.to_json();
    CHECK(js.find("final_upper") != std::string::npos);
    CHECK(js.find("bruteforce") != std::string::npos);
}
