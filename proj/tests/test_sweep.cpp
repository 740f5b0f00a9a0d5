#include <doctest.h>

#include <algorithm>

#include "sweep.hpp"

using namespace strelay;

TEST_CASE("sweep is deterministic and sorted by the trivial bound") {
    const auto a = run_sweep(25, 7);
    const auto b = run_sweep(25, 7);
    REQUIRE(a.size() == 25);
    CHECK(sweep_csv(a) == sweep_csv(b));
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].trivial <= a[i].trivial);
}

TEST_CASE("sweep rows respect the bound ordering") {
    for (const auto& r : run_sweep(40, 11)) {
        CHECK(r.n2 > r.n1);
        CHECK(r.delay >= r.n1 + r.n2);
        CHECK(r.delay <= r.n1 + r.n2 + 10);
        CHECK(r.nonadaptive < r.rate);
        CHECK(r.rate <= r.upper);
        CHECK(r.upper <= r.trivial);
        CHECK(r.rate_with_header <= r.rate);
        CHECK(r.ratio <= Rational(1));
        CHECK(r.ratio == r.rate / r.upper);
    }
}

TEST_CASE("csv has the documented header and one line per row") {
    const auto rows = run_sweep(5, 3);
    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("n1,n2,t,trivial_bound,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    const std::string js = sweep_json(rows);
    CHECK(js.find("our_upper") != std::string::npos);
}
