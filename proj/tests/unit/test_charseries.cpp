#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "loopchar/error.hpp"

using namespace testing;

TEST_CASE("truncated products") {
    CHECK(series1({1, 1}, 2) * series1({1, 1}, 2) == series1({1, 2, 1}, 2));
    CHECK(series1({1, 2}, 2).pow(2) == series1({1, 4, 4}, 2));
    CHECK(series1({1, 1}, 2).pow(3) == series1({1, 3, 3}, 2));
    CHECK(series1({1, 2, 1}, 4).to_string() == "1 + 2*X + X^2");
    CHECK(GradedSeries::one({3}).to_string() == "1");
}

TEST_CASE("product form") {
    // 1 / (1 - X) = 1 + X + X^2 + ...
    CHECK(GradedSeries::product_form({4}, {{{1}, 1}}) == series1({1, 1, 1, 1, 1}, 4));
    // 1 / (1 - X)^2
    CHECK(GradedSeries::product_form({3}, {{{1}, 2}}) == series1({1, 2, 3, 4}, 3));
}

TEST_CASE("power substitution") {
    CHECK(substitute_power(series1({1, 1, 1}, 4), 2) == series1({1, 0, 1, 0, 1}, 4));
    CHECK(substitute_power(series1({1, 3, 1}, 4), 1) == series1({1, 3, 1}, 4));
    // X * Y over Z/2 with t = 2 goes to X^2 * Y^0
    GradedSeries s({4}, {2});
    const IntVector xy = {1, 1}, x2 = {2, 0};
    s.add(xy, 1);
    const GradedSeries sub = substitute_power(s, 2);
    CHECK(sub.coeff(x2) == 1);
    CHECK(sub.terms().size() == 1);
}

TEST_CASE("eigenspace characters") {
    const GradedSeries p = series1({1, 1}, 4);
    CHECK(eigenspace_char(p, 2, 0) == series1({1, 1, 1}, 4));
    CHECK(eigenspace_char(p, 2, 1) == series1({0, 1}, 4));
    CHECK(eigenspace_char(p, 3, 1) == series1({0, 1, 1}, 4));
    for (std::int64_t k = -3; k <= 3; ++k) CHECK(eigenspace_char(p, 1, k) == p);
    CHECK(eigenspace_char(p, 2, 3) == eigenspace_char(p, 2, 1));
}

TEST_CASE("partition identity") {
    for (const auto& p : {series1({1, 1}, 6), series1({2, 1}, 6), series1({1, 1, 1}, 6), series1({0, 3, 0, 2}, 6)}) {
        for (std::int64_t r = 1; r <= 6; ++r) {
            GradedSeries sum({6});
            for (std::int64_t k = 0; k < r; ++k) sum += eigenspace_char(p, r, k);
            CHECK(sum == p.pow(r));
        }
    }
}

TEST_CASE("non-integral input is reported") {
    // a fractional dimension series cannot come from a representation
    const GradedSeries half = GradedSeries::from_terms({2}, {{{0}, mpq_class(1, 2)}});
    CHECK_THROWS_AS(eigenspace_char(half, 2, 1), Error);
}

TEST_CASE("total character") {
    CHECK(total_char(series1({1, 3}, 4), 1) == series1({1, 3}, 4));
    CHECK(total_char(series1({1, 1}, 4), 4) == series1({1, 4, 6, 4, 1}, 4));
    CHECK(total_char(series1({1, 2}, 4), 2) == series1({1, 4, 4}, 4));
}

TEST_CASE("nested components") {
    const GradedSeries p = series1({1, 1}, 4);
    const ComponentChars single = nested_component_chars(p, {2});
    CHECK(single.at({0}) == eigenspace_char(p, 2, 0));
    CHECK(single.at({1}) == eigenspace_char(p, 2, 1));

    const ComponentChars four = nested_component_chars(p, {2, 2});
    CHECK(four.size() == 4);
    GradedSeries sum({4});
    for (const auto& [k, s] : four) {
        CHECK(s.is_nonnegative_integral());
        sum += s;
    }
    CHECK(sum == p.pow(4));

    const ComponentChars six = nested_component_chars(series1({1, 2}, 3), {2, 3});
    GradedSeries sum6({3});
    for (const auto& [k, s] : six) sum6 += s;
    CHECK(sum6 == series1({1, 2}, 3).pow(6));
}

TEST_CASE("loop component tables") {
    const GradedSeries p = series1({1, 1}, 4);
    const ComponentChars comps = nested_component_chars(p, {2});
    const LoopComponentCharacter j0 = assemble_loop_component_char(comps, {2}, {0});
    const IntVector m0 = {0}, m1 = {1}, m2 = {2}, mm1 = {-1};
    CHECK(j0.at(m0) == comps.at({0}));
    CHECK(j0.at(m2) == j0.at(m0));
    CHECK(j0.eigenindex_at(mm1) == IntVector{1});
    const LoopComponentCharacter j1 = assemble_loop_component_char(comps, {2}, {1});
    CHECK(j1.at(m1) == comps.at({0}));
    CHECK(j1.at(m0) + j1.at(m1) == total_char(p, 2));
    const IntVector alpha = {1};
    CHECK(j1.dimension(m0, alpha) == 1);

    ComponentChars partial = comps;
    partial.erase({1});
    CHECK_THROWS(assemble_loop_component_char(partial, {2}, {0}));
}
