#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loopchar/scalars.hpp"
#include "loopchar/types.hpp"
#include "loopchar/upoly.hpp"
#include "loopchar/verdict.hpp"

namespace loopchar {

using Monomial = std::vector<int>;

/// One summand p(m) * a_1^{m_1} ... a_n^{m_n} of an exp-polynomial map.
struct ExpTerm {
    std::vector<CycScalar> base;
    std::map<Monomial, CycScalar> poly;

    /// Largest exponent of m_i in the polynomial part (-1 if the part is empty).
    int degree(std::size_t i) const;
    CycScalar poly_value(std::span<const std::int64_t> m) const;
};

/// Lexicographic comparison of base vectors by canonical key.
int compare_bases(const std::vector<CycScalar>& a, const std::vector<CycScalar>& b);

/// An exp-polynomial map Z^n -> Q(zeta_N) in canonical form: pairwise distinct
/// bases, sorted by canonical key, no zero coefficients. Distinct exponentials
/// are linearly independent, so two maps are equal as functions exactly when
/// their canonical forms are equal.
class ExpPoly {
public:
    ExpPoly(FieldPtr field, std::size_t arity);

    /// Merges equal bases, drops zero coefficients and empty terms, sorts.
    /// Throws ParseError on arity mismatches or zero base components.
    static ExpPoly normalize(FieldPtr field, std::size_t arity, std::vector<ExpTerm> raw);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    CycScalar eval(std::span<const std::int64_t> m) const;
    ExpPoly embed(const FieldPtr& larger) const;

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
    friend bool operator==(const ExpPoly& a, const ExpPoly& b);

    std::string to_string() const;

private:
    FieldPtr field_;
    std::size_t arity_;
    std::vector<ExpTerm> terms_;
};

struct Generator {
    std::string label;
    ExpPoly function;
};

/// The highest-weight datum: one exp-polynomial map per Cartan generator.
struct PsiSpec {
    FieldPtr field;
    std::size_t n = 1;
    std::vector<Generator> generators;
    // Values on the degree derivations; carried through, never computed with.
    std::vector<std::pair<std::string, std::string>> extra_weights;

    /// Throws ParseError if arities disagree or every map is zero.
    void validate() const;
    bool is_zero() const;
    PsiSpec embed(const FieldPtr& larger) const;
    friend bool operator==(const PsiSpec& a, const PsiSpec& b);
};

/// Gamma = r_1 Z + ... + r_n Z and its quotient group.
class SupportLattice {
public:
    explicit SupportLattice(IntVector orders);

    const IntVector& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    /// R = prod r_i.
    std::int64_t index() const noexcept { return index_; }
    bool is_trivial() const noexcept { return index_ == 1; }

    /// All of Z/r_1 x ... x Z/r_n in lexicographic order.
    std::vector<IntVector> elements() const;
    IntVector reduce(IntVector k) const;
    bool contains(std::span<const std::int64_t> m) const;

    friend bool operator==(const SupportLattice&, const SupportLattice&) = default;

private:
    IntVector orders_;
    std::int64_t index_ = 1;
};

struct LatticeDetection {
    IntVector orders;
    /// lcm of the field conductor and every r_i.
    std::int64_t required_conductor = 1;
    /// Set when the data is also invariant under a joint twist that lies
    /// outside the detected diagonal group.
    bool non_diagonal_symmetry = false;
};

/// Largest r_i per variable such that every generator's term multiset is
/// invariant under base_i -> zeta_{r_i} base_i. Never throws.
LatticeDetection detect_lattice(const PsiSpec& spec);

/// As detect_lattice, but throws ConductorTooSmall if some r_i does not divide N.
SupportLattice support_lattice(const PsiSpec& spec);

/// Keeps one term per orbit of bases (the minimal canonical key), so that
/// spec = sum over k of twist(phi, k). Throws OrbitInconsistency.
PsiSpec extract_phi(const PsiSpec& spec, const SupportLattice& lattice);

/// Multiplies base component i by zeta_{r_i}^{k_i}.
ExpPoly twist(const ExpPoly& f, const SupportLattice& lattice, std::span<const std::int64_t> k);
PsiSpec twist(const PsiSpec& phi, const SupportLattice& lattice, std::span<const std::int64_t> k);

/// Termwise comparison of sum_k twist(phi, k) against spec, plus an exact
/// evaluation comparison on [-box, box]^n (box raised to a conclusive size).
Verdict reconstruct_check(const PsiSpec& spec, const PsiSpec& phi, const SupportLattice& lattice, std::int64_t box);

/// Smallest b such that two exp-polynomial maps built from these bases agree
/// everywhere once they agree on [-b, b]^n.
std::int64_t determining_box(const std::vector<const ExpPoly*>& functions);

/// Exact values of f on the box lo <= m <= hi.
class ValueGrid {
public:
    ValueGrid(const ExpPoly& f, IntVector lo, IntVector hi);

    const CycScalar& at(std::span<const std::int64_t> m) const;
    const IntVector& lo() const noexcept { return lo_; }
    const IntVector& hi() const noexcept { return hi_; }

private:
    std::size_t offset(std::span<const std::int64_t> m) const;

    IntVector lo_;
    IntVector hi_;
    std::vector<CycScalar> values_;
};

/// Calls fn on every point of lo <= m <= hi, first coordinate varying slowest.
void for_each_point(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& fn);

/// Calls fn on every point of [-box, box]^n, nearest the origin first (by max
/// norm, then L1 norm, then 0, 1, -1, 2, -2, ... per coordinate). Checks scan
/// in this order so a reported witness is a smallest failing point.
void for_each_point_outward(std::size_t n, std::int64_t box, const std::function<void(const IntVector&)>& fn);

struct VariableAnnihilator {
    UPoly poly;
    // Distinct roots ordered by canonical key.
    std::vector<RootMultiplicity> roots;
    // Filled by orbit_factorization.
    std::int64_t orbit_size = 1;
    std::vector<RootMultiplicity> orbit_representatives;
    std::vector<UPoly> factors;  // factors[ell - 1] = P_{i, ell}
};

struct AnnihilatorData {
    std::vector<VariableAnnihilator> variables;

    bool factored() const;
};

/// Monic P_i whose roots are the i-th base components, each with multiplicity
/// one more than the largest i-th degree of a polynomial part attached to it.
AnnihilatorData annihilator_polys(const PsiSpec& spec);

/// Checks sum_j c_ij psi_h(m + j e_i) = 0 on the box for every i and h.
Verdict relation_R_check(const PsiSpec& spec, const AnnihilatorData& ann, std::int64_t box);

/// As relation_R_check for a single variable and an arbitrary polynomial,
/// evaluated against precomputed grids (one per generator).
Verdict annihilates(const std::vector<ValueGrid>& grids, std::size_t variable, const UPoly& poly, std::int64_t box);

/// Precomputes the grids `annihilates` needs for polynomials up to max_degree.
std::vector<ValueGrid> relation_grids(const PsiSpec& spec, std::int64_t box, int max_degree);

/// Splits every root set into xi_i-orbits of size r_i and builds P_{i, ell}.
/// Throws OrbitInconsistency on incomplete orbits or unequal multiplicities.
AnnihilatorData orbit_factorization(AnnihilatorData ann, const SupportLattice& lattice);

/// The generators (P_{1, j_1}, ..., P_{n, j_n}) of I_J; j_i taken mod r_i with 0 meaning r_i.
std::vector<UPoly> ideal_generators(const AnnihilatorData& ann, std::span<const std::int64_t> index);

/// True iff J != J' and some coordinate with j_i != j'_i has coprime factors.
bool ideal_coprimality(const AnnihilatorData& ann, std::span<const std::int64_t> j, std::span<const std::int64_t> j_prime);

/// deg P_i = sum over ell of deg P_{i, ell}, for every i.
bool crt_dimension_identity(const AnnihilatorData& ann);

}  // namespace loopchar
