#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "loopchar/error.hpp"
#include "loopchar/oracle.hpp"

using namespace testing;
using loopchar::oracle::GradedBasis;

TEST_CASE("necklace counts") {
    const GradedBasis v = GradedBasis::from_series(series1({1, 1}, 2));
    CHECK(v.elements().size() == 2);
    const auto two = oracle::brute_eigenspace_dims(v, 2, {2});
    CHECK(two[0] == series1({1, 1, 1}, 2));
    CHECK(two[1] == series1({0, 1, 0}, 2));
    const auto one = oracle::brute_eigenspace_dims(v, 1, {2});
    CHECK(one[0] == series1({1, 1}, 2));
    const auto three = oracle::brute_eigenspace_dims(v, 3, {1});
    for (std::int64_t k = 0; k < 3; ++k) CHECK(three[static_cast<std::size_t>(k)].coeff(IntVector{1}) == 1);
}

TEST_CASE("burnside consistency") {
    // Summing over k recovers the word count, i.e. the r-th power of the table.
    for (const auto& p : {series1({2, 1}, 5), series1({1, 0, 2}, 5), series1({1, 1, 1}, 5)}) {
        const GradedBasis b = GradedBasis::from_series(p);
        for (std::int64_t r = 1; r <= 5; ++r) {
            const auto dims = oracle::brute_eigenspace_dims(b, r, {5});
            GradedSeries sum({5});
            for (const auto& s : dims) sum += s;
            CHECK(sum == p.pow(r));
        }
    }
}

TEST_CASE("multi-stage orbit counts") {
    const GradedSeries p = series1({1, 1}, 4);
    const GradedBasis b = GradedBasis::from_series(p);
    const ComponentChars single = oracle::brute_multi_eigenspace_dims(b, {3}, {4});
    const auto dims = oracle::brute_eigenspace_dims(b, 3, {4});
    for (std::int64_t k = 0; k < 3; ++k) CHECK(single.at({k}) == dims[static_cast<std::size_t>(k)]);

    const ComponentChars four = oracle::brute_multi_eigenspace_dims(b, {2, 2}, {4});
    GradedSeries sum({4});
    for (const auto& [k, s] : four) sum += s;
    CHECK(sum == p.pow(4));
    CHECK(four.at({0, 0}) == nested_component_chars(p, {2, 2}).at({0, 0}));
}

TEST_CASE("budget") {
    const GradedBasis b = GradedBasis::from_series(series1({3, 3}, 6));
    try {
        oracle::brute_eigenspace_dims(b, 6, {6}, 100);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
        CHECK(exit_code(e.kind()) == kExitBudget);
    }
}

TEST_CASE("basis from series") {
    const GradedSeries p = GradedSeries::from_terms({2, 2}, {{{0, 0}, 1}, {{1, 2}, 2}});
    const GradedBasis b = GradedBasis::from_series(p);
    CHECK(b.rank() == 2);
    CHECK(b.elements().size() == 3);
    CHECK_THROWS(GradedBasis::from_series(GradedSeries::from_terms({1}, {{{0}, mpq_class(1, 2)}})));
}
