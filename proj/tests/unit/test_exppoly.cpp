#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "loopchar/error.hpp"
#include "loopchar/oracle.hpp"

using namespace testing;

namespace {

const FieldPtr q2 = CyclotomicField::make(2);
const IntVector zero1 = {0};

ExpPoly two_minus_two() { return make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}, {{"-2"}, {{{0}, "1"}}}}); }
ExpPoly m_pm_one() { return make_exp(q2, 1, {{{"1"}, {{{1}, "1"}}}, {{"-1"}, {{{1}, "1"}}}}); }

CycScalar at(const ExpPoly& f, std::int64_t m) {
    const IntVector v = {m};
    return f.eval(v);
}

}  // namespace

TEST_CASE("evaluation") {
    const ExpPoly f = make_exp(q2, 1, {{{"2"}, {{{2}, "3"}}}});
    CHECK(at(f, 3) == CycScalar(q2, 216));
    CHECK(at(two_minus_two(), 3).is_zero());
    CHECK(at(m_pm_one(), 4) == CycScalar(q2, 8));
    CHECK(at(two_minus_two(), -2) == CycScalar(q2, mpq_class(1, 2)));
}

TEST_CASE("normal form") {
    const ExpPoly merged = make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}, {{"2"}, {{{0}, "3"}}}});
    REQUIRE(merged.terms().size() == 1);
    CHECK(merged.terms()[0].poly.at({0}) == CycScalar(q2, 4));
    CHECK(make_exp(q2, 1, {{{"2"}, {{{1}, "1"}}}, {{"2"}, {{{1}, "-1"}}}}).is_zero());
    CHECK(two_minus_two().terms().size() == 2);
    // idempotent and independent of input order
    const ExpPoly swapped = make_exp(q2, 1, {{{"-2"}, {{{0}, "1"}}}, {{"2"}, {{{0}, "1"}}}});
    CHECK(swapped == two_minus_two());
    CHECK(ExpPoly::normalize(q2, 1, two_minus_two().terms()) == two_minus_two());
    CHECK_THROWS_AS(make_exp(q2, 1, {{{"0"}, {{{0}, "1"}}}}), Error);
    CHECK_THROWS_AS(make_exp(q2, 2, {{{"2"}, {{{0, 0}, "1"}}}}), Error);
}

TEST_CASE("support lattice") {
    CHECK(support_lattice(make_psi(q2, 1, {two_minus_two()})).orders() == IntVector{2});
    CHECK(support_lattice(make_psi(q2, 1, {make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}})})).orders() == IntVector{1});
    CHECK(support_lattice(make_psi(q2, 1, {m_pm_one()})).orders() == IntVector{2});

    // r = (2, 3) needs zeta_6
    const auto q3 = CyclotomicField::make(3);
    std::vector<TermSpec> terms;
    for (const char* a : {"2", "-2"}) {
        for (const char* b : {"3", "3*zeta(3)", "3*zeta(3)^2"}) terms.push_back({{a, b}, {{{0, 0}, "1"}}});
    }
    const PsiSpec psi = make_psi(q3, 2, {make_exp(q3, 2, terms)});
    const LatticeDetection det = detect_lattice(psi);
    CHECK(det.orders == IntVector{2, 3});
    CHECK(det.required_conductor == 6);
    try {
        support_lattice(psi);
        FAIL("expected ConductorTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConductorTooSmall);
        CHECK(e.suggested_conductor == 6);
    }
    CHECK(support_lattice(psi.embed(CyclotomicField::make(6))).orders() == IntVector{2, 3});
}

TEST_CASE("lattice group") {
    const SupportLattice lat({2, 3});
    CHECK(lat.index() == 6);
    CHECK(lat.elements().size() == 6);
    CHECK(lat.elements().front() == IntVector{0, 0});
    CHECK(lat.elements()[1] == IntVector{0, 1});
    CHECK(lat.reduce({-1, 7}) == IntVector{1, 1});
    const IntVector in = {4, -3}, out = {1, 3};
    CHECK(lat.contains(in));
    CHECK_FALSE(lat.contains(out));
}

TEST_CASE("extract phi and twists") {
    const PsiSpec psi = make_psi(q2, 1, {two_minus_two()});
    const SupportLattice lat = support_lattice(psi);
    const PsiSpec phi = extract_phi(psi, lat);
    CHECK(phi.generators[0].function == make_exp(q2, 1, {{{"-2"}, {{{0}, "1"}}}}));
    CHECK(reconstruct_check(psi, phi, lat, 8).passed);

    const PsiSpec psi2 = make_psi(q2, 1, {make_exp(q2, 1, {{{"1"}, {{{0}, "2"}}}, {{"-1"}, {{{0}, "2"}}}})});
    CHECK(extract_phi(psi2, support_lattice(psi2)).generators[0].function == make_exp(q2, 1, {{{"-1"}, {{{0}, "2"}}}}));

    const PsiSpec trivial = make_psi(q2, 1, {make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}, {{"3"}, {{{1}, "1"}}}})});
    const SupportLattice one = support_lattice(trivial);
    CHECK(extract_phi(trivial, one) == trivial);
    CHECK(reconstruct_check(trivial, trivial, one, 8).passed);

    const ExpPoly f = make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}});
    const IntVector k1 = {1};
    CHECK(twist(f, lat, k1) == make_exp(q2, 1, {{{"-2"}, {{{0}, "1"}}}}));
    CHECK(twist(f, lat, zero1) == f);
    const ExpPoly g = make_exp(q2, 2, {{{"1", "2"}, {{{0, 0}, "1"}}}});
    const IntVector k11 = {1, 1};
    CHECK(twist(g, SupportLattice({2, 2}), k11) == make_exp(q2, 2, {{{"-1", "-2"}, {{{0, 0}, "1"}}}}));
}

TEST_CASE("reconstruct detects a missing representative") {
    const FieldPtr q4 = CyclotomicField::make(4);
    const PsiSpec psi = make_psi(q4, 1, {make_exp(q4, 1, {{{"2"}, {{{0}, "1"}}}, {{"-2"}, {{{0}, "1"}}}, {{"3"}, {{{0}, "1"}}}, {{"-3"}, {{{0}, "1"}}}})});
    const SupportLattice lat = support_lattice(psi);
    const PsiSpec partial = make_psi(q4, 1, {make_exp(q4, 1, {{{"2"}, {{{0}, "1"}}}})});
    const Verdict v = reconstruct_check(psi, partial, lat, 8);
    CHECK_FALSE(v.passed);
    CHECK(v.witness == IntVector{0});
}

TEST_CASE("orbit inconsistency") {
    // Invariant under the sign flip in the base multiset but with unequal coefficients.
    const PsiSpec psi = make_psi(q2, 1, {make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}, {{"-2"}, {{{0}, "5"}}}})});
    CHECK(support_lattice(psi).orders() == IntVector{1});
    CHECK_THROWS_AS(extract_phi(psi, SupportLattice({2})), Error);
}

TEST_CASE("annihilators") {
    const PsiSpec psi = make_psi(q2, 1, {two_minus_two()});
    const AnnihilatorData ann = annihilator_polys(psi);
    CHECK(ann.variables[0].poly.to_string() == "t^2 - 4");
    CHECK(relation_R_check(psi, ann, 6).passed);

    AnnihilatorData wrong = ann;
    wrong.variables[0].poly = UPoly(q2, {CycScalar(q2, -3), CycScalar(q2, 0), CycScalar(q2, 1)});
    const Verdict v = relation_R_check(psi, wrong, 6);
    CHECK_FALSE(v.passed);
    CHECK(v.witness == IntVector{0});

    const PsiSpec sq = make_psi(q2, 1, {m_pm_one()});
    const AnnihilatorData ann2 = annihilator_polys(sq);
    CHECK(ann2.variables[0].poly.to_string() == "t^4 - 2*t^2 + 1");
    CHECK(relation_R_check(sq, ann2, 8).passed);

    const PsiSpec constant = make_psi(q2, 2, {make_exp(q2, 2, {{{"1", "1"}, {{{0, 0}, "5"}}}})});
    const AnnihilatorData ann3 = annihilator_polys(constant);
    CHECK(ann3.variables[0].poly.to_string() == "t - 1");
    CHECK(ann3.variables[1].poly.to_string() == "t - 1");
}

TEST_CASE("minimality of the annihilator") {
    const PsiSpec sq = make_psi(q2, 1, {m_pm_one()});
    const auto grids = relation_grids(sq, 8, 4);
    const UPoly lowered = UPoly::from_roots(q2, {{CycScalar(q2, 1), 1}, {CycScalar(q2, -1), 2}});
    CHECK_FALSE(annihilates(grids, 0, lowered, 8).passed);
    const UPoly full = UPoly::from_roots(q2, {{CycScalar(q2, 1), 2}, {CycScalar(q2, -1), 2}});
    CHECK(annihilates(grids, 0, full, 8).passed);
}

// Factors follow the orbit representative extract_phi picks (-2 here), so
// P_{1,l} = t - xi^l (-2): P_{1,1} = t - 2, P_{1,2} = t + 2.
TEST_CASE("orbit factorization") {
    const PsiSpec psi = make_psi(q2, 1, {two_minus_two()});
    const SupportLattice lat = support_lattice(psi);
    const AnnihilatorData f = orbit_factorization(annihilator_polys(psi), lat);
    REQUIRE(f.variables[0].factors.size() == 2);
    CHECK(f.variables[0].orbit_size == 2);
    CHECK(f.variables[0].factors[0].to_string() == "t - 2");
    CHECK(f.variables[0].factors[1].to_string() == "t + 2");
    CHECK(f.variables[0].factors[0] * f.variables[0].factors[1] == f.variables[0].poly);

    const PsiSpec sq = make_psi(q2, 1, {m_pm_one()});
    const AnnihilatorData g = orbit_factorization(annihilator_polys(sq), support_lattice(sq));
    CHECK(g.variables[0].factors[0].to_string() == "t^2 - 2*t + 1");
    CHECK(g.variables[0].factors[1].to_string() == "t^2 + 2*t + 1");

    const PsiSpec one = make_psi(q2, 1, {make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}})});
    const AnnihilatorData h = orbit_factorization(annihilator_polys(one), support_lattice(one));
    REQUIRE(h.variables[0].factors.size() == 1);
    CHECK(h.variables[0].factors[0] == h.variables[0].poly);
    CHECK(crt_dimension_identity(f));
    CHECK(crt_dimension_identity(g));
}

TEST_CASE("ideal coprimality") {
    const PsiSpec psi = make_psi(q2, 1, {two_minus_two()});
    const SupportLattice lat = support_lattice(psi);
    const AnnihilatorData f = orbit_factorization(annihilator_polys(psi), lat);
    const IntVector j1 = {1}, j2 = {2}, j0 = {0};
    CHECK(ideal_coprimality(f, j1, j2));
    CHECK_FALSE(ideal_coprimality(f, j1, j1));
    CHECK_FALSE(ideal_coprimality(f, j0, j2));  // 0 and r name the same factor
    CHECK(ideal_generators(f, j1)[0].to_string() == "t - 2");

    std::vector<TermSpec> terms;
    for (const char* a : {"1", "-1"}) {
        for (const char* b : {"2", "-2"}) terms.push_back({{a, b}, {{{0, 0}, "1"}}});
    }
    const PsiSpec psi2 = make_psi(q2, 2, {make_exp(q2, 2, terms)});
    const SupportLattice lat2 = support_lattice(psi2);
    CHECK(lat2.orders() == IntVector{2, 2});
    const AnnihilatorData f2 = orbit_factorization(annihilator_polys(psi2), lat2);
    const IntVector a = {1, 1}, b = {1, 2};
    CHECK(ideal_coprimality(f2, a, b));
}

TEST_CASE("vanishing off the lattice") {
    const SupportLattice two({2});
    CHECK(oracle::brute_vanishing_check(two_minus_two(), two, 6).passed);
    const Verdict v = oracle::brute_vanishing_check(make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}}), two, 6);
    CHECK_FALSE(v.passed);
    CHECK(v.witness == IntVector{1});
    CHECK(oracle::brute_vanishing_check(make_exp(q2, 1, {{{"2"}, {{{0}, "1"}}}}), SupportLattice({1}), 6).passed);
}

TEST_CASE("trivial datum is rejected") {
    const PsiSpec zero = make_psi(q2, 1, {ExpPoly(q2, 1)});
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(zero.validate(), Error);
}
