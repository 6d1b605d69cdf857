#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "loopchar/error.hpp"
#include "loopchar/scalars.hpp"
#include "loopchar/upoly.hpp"

using namespace loopchar;

TEST_CASE("cyclotomic polynomials") {
    CHECK(CyclotomicField::make(1)->degree() == 1);
    CHECK(CyclotomicField::make(4)->cyclotomic_polynomial() == std::vector<mpz_class>{1, 0, 1});
    CHECK(CyclotomicField::make(12)->cyclotomic_polynomial() == std::vector<mpz_class>{1, 0, -1, 0, 1});
    CHECK(CyclotomicField::make(9)->degree() == 6);
    CHECK(CyclotomicField::make(12) == CyclotomicField::make(12));
}

TEST_CASE("roots of unity") {
    CHECK(CycScalar::root_of_unity(CyclotomicField::make(1), 1, 0).is_one());
    const auto q2 = CyclotomicField::make(2);
    CHECK(CycScalar::root_of_unity(q2, 2, 1) == CycScalar(q2, -1));
    const auto q4 = CyclotomicField::make(4);
    CHECK(CycScalar::root_of_unity(q4, 4, 2) == CycScalar(q4, -1));
    CHECK_THROWS_AS(CycScalar::root_of_unity(q4, 3, 1), Error);
    const auto q12 = CyclotomicField::make(12);
    CHECK(CycScalar::root_of_unity(q12, 3, 1) == CycScalar::root_of_unity(q12, 12, 4));
    CHECK(CycScalar::root_of_unity(q12, 12, 5).multiplicative_order() == 12);
    CHECK(CycScalar(q12, -1).multiplicative_order() == 2);
    CHECK_FALSE(CycScalar(q12, 2).multiplicative_order().has_value());
}

TEST_CASE("field operations") {
    const auto q4 = CyclotomicField::make(4);
    const CycScalar i = CycScalar::root_of_unity(q4, 4, 1);
    CHECK(i * i == CycScalar(q4, -1));
    CHECK(CycScalar(q4, 1) / i == -i);
    CHECK(i.pow(0).is_one());
    CHECK(i.pow(-1) == -i);
    CHECK((CycScalar(q4, 3) + i).pow(2) == CycScalar(q4, 8) + CycScalar(q4, 6) * i);
    CHECK_THROWS_AS(CycScalar(q4).inverse(), Error);
    CHECK_THROWS_AS(CycScalar(q4, 1) + CycScalar(CyclotomicField::make(3), 1), Error);
}

TEST_CASE("random algebraic identities") {
    std::mt19937_64 rng(7);
    for (std::int64_t n : {3, 5, 8, 12, 15}) {
        const auto f = CyclotomicField::make(n);
        auto rnd = [&]() {
            CycScalar s(f);
            for (int t = 0; t < 3; ++t) {
                s += CycScalar(f, mpq_class(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4))) *
                     CycScalar::root_of_unity(f, n, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)));
            }
            return s;
        };
        for (int trial = 0; trial < 25; ++trial) {
            const CycScalar a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(a.galois_conjugate(1) == a);
        }
    }
}

TEST_CASE("xi orbits") {
    const auto q2 = CyclotomicField::make(2);
    CHECK(same_xi_orbit(CycScalar(q2, 2), CycScalar(q2, -2), 2) == 1);
    CHECK(same_xi_orbit(CycScalar(q2, 2), CycScalar(q2, 2), 2) == 0);
    CHECK_FALSE(same_xi_orbit(CycScalar(q2, 2), CycScalar(q2, 3), 2).has_value());
    const auto q12 = CyclotomicField::make(12);
    const CycScalar a = CycScalar(q12, 3) * CycScalar::root_of_unity(q12, 12, 1);
    CHECK(same_xi_orbit(a, a * CycScalar::root_of_unity(q12, 4, 3), 4) == 3);
}

TEST_CASE("canonical keys") {
    const auto q4 = CyclotomicField::make(4);
    const CycScalar two(q4, 2), mtwo(q4, -2), itwo = CycScalar(q4, 2) * CycScalar::root_of_unity(q4, 4, 1);
    CHECK(mtwo.canonical_key() < two.canonical_key());
    CHECK(two.canonical_key() == CycScalar(q4, 2).canonical_key());
    CHECK_FALSE(two.canonical_key() == itwo.canonical_key());
    std::vector<CycScalar> v1 = {two, mtwo, itwo}, v2 = {itwo, two, mtwo};
    auto by_key = [](const CycScalar& a, const CycScalar& b) { return a.compare(b) < 0; };
    std::sort(v1.begin(), v1.end(), by_key);
    std::sort(v2.begin(), v2.end(), by_key);
    CHECK(v1 == v2);
}

TEST_CASE("literal parsing round trips") {
    const auto q12 = CyclotomicField::make(12);
    CHECK(parse_scalar("-3/2", q12) == CycScalar(q12, mpq_class(-3, 2)));
    CHECK(parse_scalar("zeta(4)^2", q12) == CycScalar(q12, -1));
    CHECK(parse_scalar("2*(1 + zeta(3))^-1", q12) * (CycScalar(q12, 1) + CycScalar::root_of_unity(q12, 3, 1)) == CycScalar(q12, 2));
    CHECK(parse_scalar("123456789012345678901234567890", q12) ==
          CycScalar(q12, mpq_class("123456789012345678901234567890")));
    for (const char* lit : {"0", "1", "-3/2*zeta(12) + 2", "zeta(12)^5 - 7/3*zeta(12)^2"}) {
        const CycScalar s = parse_scalar(lit, q12);
        CHECK(parse_scalar(s.to_string(), q12) == s);
    }
    CHECK_THROWS_AS(parse_scalar("zeta(5)", q12), Error);
    CHECK_THROWS_AS(parse_scalar("2 +", q12), Error);
    CHECK_THROWS_AS(parse_scalar("1/0", q12), Error);
    CHECK(zeta_orders_in("zeta(3)*2 + zeta(8)") == std::vector<std::int64_t>{3, 8});
}

TEST_CASE("embedding") {
    const auto q4 = CyclotomicField::make(4), q12 = CyclotomicField::make(12);
    const CycScalar i = CycScalar::root_of_unity(q4, 4, 1);
    CHECK(i.embed(q12) == CycScalar::root_of_unity(q12, 4, 1));
    CHECK((i * i).embed(q12) == CycScalar(q12, -1));
}

TEST_CASE("univariate polynomials") {
    const auto q2 = CyclotomicField::make(2);
    const UPoly p = UPoly::from_roots(q2, {{CycScalar(q2, 2), 1}, {CycScalar(q2, -2), 1}});
    CHECK(p.to_string() == "t^2 - 4");
    CHECK(p.eval(CycScalar(q2, 2)).is_zero());
    const UPoly sq = UPoly::from_roots(q2, {{CycScalar(q2, 1), 2}, {CycScalar(q2, -1), 2}});
    CHECK(sq.to_string() == "t^4 - 2*t^2 + 1");
    const UPoly g = UPoly::gcd(p, UPoly::from_roots(q2, {{CycScalar(q2, 2), 3}}));
    CHECK(g == UPoly::from_roots(q2, {{CycScalar(q2, 2), 1}}));
    const auto [quot, rem] = UPoly::divmod(sq, UPoly::from_roots(q2, {{CycScalar(q2, 1), 1}}));
    CHECK(rem.is_zero());
    CHECK(quot.degree() == 3);
}
