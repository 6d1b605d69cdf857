#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "loopchar/numtheory.hpp"

using namespace loopchar::numtheory;

TEST_CASE("divisors") {
    CHECK(divisors(1) == std::vector<std::int64_t>{1});
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(7) == std::vector<std::int64_t>{1, 7});
    CHECK_THROWS_AS(divisors(0), std::invalid_argument);
}

TEST_CASE("prime factors") {
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
    CHECK(prime_factors(97) == std::vector<std::int64_t>{97});
}

TEST_CASE("mobius") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(mobius(6) == 1);
    // sum over d | n of mu(d) vanishes for n > 1
    for (std::int64_t n = 2; n <= 200; ++n) {
        int s = 0;
        for (auto d : divisors(n)) s += mobius(d);
        CHECK(s == 0);
    }
}

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(4) == 2);
    CHECK(euler_phi(12) == 4);
    for (std::int64_t n = 1; n <= 200; ++n) {
        std::int64_t units = 0;
        for (std::int64_t j = 1; j <= n; ++j) units += std::gcd(j, n) == 1;
        CHECK(euler_phi(n) == units);
        std::int64_t s = 0;
        for (auto d : divisors(n)) s += euler_phi(d);
        CHECK(s == n);
    }
}

TEST_CASE("ramanujan sums") {
    for (std::int64_t k = -5; k <= 5; ++k) CHECK(ramanujan_sum(1, k) == 1);
    CHECK(ramanujan_sum(2, 1) == -1);
    CHECK(ramanujan_sum(4, 0) == 2);
    CHECK(ramanujan_sum(6, 2) == -1);
    CHECK(RamanujanSum::of(6, 2).value == -1);
    for (std::int64_t q = 1; q <= 40; ++q) {
        CHECK(ramanujan_sum(q, 0) == euler_phi(q));
        CHECK(ramanujan_sum(q, 1) == mobius(q));
        for (std::int64_t k = 0; k < q; ++k) {
            CHECK(ramanujan_sum(q, k) == ramanujan_sum(q, k + q));
            CHECK(ramanujan_sum(q, k) == ramanujan_sum(q, -k));
        }
        // orthogonality: sum over k mod q of C_q(k) = 0 for q > 1
        std::int64_t s = 0;
        for (std::int64_t k = 0; k < q; ++k) s += ramanujan_sum(q, k);
        CHECK(s == (q == 1 ? 1 : 0));
    }
}

TEST_CASE("lcm and mod") {
    CHECK(lcm(4, 6) == 12);
    CHECK(lcm(1, 7) == 7);
    CHECK(mod(-1, 3) == 2);
    CHECK(mod(5, 3) == 2);
    CHECK(mod(0, 4) == 0);
}
