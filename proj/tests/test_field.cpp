#include <doctest.h>

#include <random>

#include "gf.hpp"

using namespace strelay;

namespace {

void check_axioms(const Field& f, int samples) {
    std::mt19937_64 rng(7);
    auto draw = [&] { return static_cast<Symbol>(rng() % f.size()); };
    for (int i = 0; i < samples; ++i) {
        const Symbol a = draw(), b = draw(), c = draw();
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.sub(f.add(a, b), b) == a);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.div(f.mul(a, b), a) == b);
        }
        CHECK(f.add(a, f.neg(a)) == 0);
    }
}

}  // namespace

TEST_CASE("field axioms hold on sampled triples") {
    check_axioms(Field(1u << 16), 2000);
    check_axioms(Field(7), 2000);
    check_axioms(Field(8), 1000);
    check_axioms(Field(251), 1000);
    check_axioms(Field(2), 200);
    check_axioms(Field(4), 200);
}

TEST_CASE("binary log/exp tables are a bijection") {
    const Field f(1u << 12);
    std::vector<char> seen(f.size(), 0);
    for (Symbol a = 1; a < f.size(); ++a) {
        const Symbol e = f.exp_table()[f.log_table()[a]];
        CHECK(e == a);
        CHECK(!seen[a]);
        seen[a] = 1;
    }
}

TEST_CASE("prime power detection") {
    std::uint32_t p = 0, e = 0;
    CHECK(Field::is_prime_power(65536, &p, &e));
    CHECK(p == 2);
    CHECK(e == 16);
    CHECK(Field::is_prime_power(7));
    CHECK(Field::is_prime_power(343));  // 7^3
    CHECK(!Field::is_prime_power(6));
    CHECK(!Field::is_prime_power(1));
    CHECK(!Field::is_prime_power(100));
}

TEST_CASE("unsupported field orders are rejected") {
    CHECK_THROWS_AS(Field(6), ConfigError);
    CHECK_THROWS_AS(Field(343), ConfigError);  // odd prime power, unsupported
    CHECK_THROWS_AS(Field(0), ConfigError);
}

TEST_CASE("inverse of zero throws") {
    const Field f(7);
    CHECK_THROWS_AS(f.inv(0), SingularSystemError);
}
