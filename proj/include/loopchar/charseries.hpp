#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

#include "loopchar/types.hpp"

namespace loopchar {

/// Truncated generating series sum_alpha c_alpha X^alpha over N^d, optionally
/// extended by cyclic eigenindex coordinates Z/rho_1 x ... x Z/rho_s.
///
/// An exponent is the concatenation (alpha_1..alpha_d, s_1..s_s). Graded
/// coordinates are truncated at `truncation()[j]`; eigen coordinates are
/// always reduced mod rho_j. Storage is dense over the truncated box.
class GradedSeries {
public:
    explicit GradedSeries(std::vector<int> truncation, IntVector moduli = {});

    static GradedSeries one(std::vector<int> truncation, IntVector moduli = {});
    /// Sum of coefficient * X^degree; degrees beyond the truncation are dropped.
    static GradedSeries from_terms(std::vector<int> truncation, const std::vector<std::pair<std::vector<int>, mpq_class>>& terms);
    /// prod over factors (1 - X^alpha)^{-mult}, truncated.
    static GradedSeries product_form(std::vector<int> truncation, const std::vector<std::pair<std::vector<int>, int>>& factors);

    std::size_t rank() const noexcept { return truncation_.size(); }
    const std::vector<int>& truncation() const noexcept { return truncation_; }
    const IntVector& moduli() const noexcept { return moduli_; }
    bool has_eigen_coordinates() const noexcept { return !moduli_.empty(); }

    /// Coefficient at a full exponent; zero outside the truncation.
    mpq_class coeff(std::span<const std::int64_t> exponent) const;
    void add(std::span<const std::int64_t> exponent, const mpq_class& value);

    /// Nonzero coefficients in storage order (first coordinate slowest).
    std::vector<std::pair<IntVector, mpq_class>> terms() const;

    GradedSeries& operator+=(const GradedSeries& other);
    friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
    friend bool operator==(const GradedSeries& a, const GradedSeries& b);
    GradedSeries scaled(const mpq_class& factor) const;
    /// Truncated e-th power by repeated squaring (e >= 0).
    GradedSeries pow(std::int64_t e) const;

    bool is_zero() const;
    bool is_nonnegative_integral() const;

    /// Same series under a smaller (componentwise) truncation.
    GradedSeries truncated(const std::vector<int>& truncation) const;

    /// Graded series at fixed eigen coordinates.
    GradedSeries eigen_slice(std::span<const std::int64_t> eigenindex) const;
    /// Sum over all eigen coordinates.
    GradedSeries specialize() const;
    /// Reinterprets the series with one more eigen coordinate fixed at `value`.
    GradedSeries with_eigen_coordinate(std::int64_t modulus, std::int64_t value) const;

    /// Human-readable form, e.g. "1 + 2*X + X^2".
    std::string to_string() const;

private:
    bool in_range(std::span<const std::int64_t> exponent) const;
    std::size_t offset(std::span<const std::int64_t> exponent) const;
    IntVector exponent_at(std::size_t offset) const;
    void require_same_shape(const GradedSeries& other, const char* op) const;

    std::vector<int> truncation_;
    IntVector moduli_;
    std::vector<std::int64_t> radices_;
    std::vector<mpq_class> coeffs_;
};

/// X^alpha -> X^{t alpha}; eigen coordinates s -> t s mod rho.
GradedSeries substitute_power(const GradedSeries& p, std::int64_t t);

/// (1/r) sum_{q | r} C_q(k) substitute_power(p, q)^{r/q}: the series of the
/// xi^k eigenspace of the cyclic rotation on the r-th tensor power. No
/// integrality check; works over any eigen-extended exponent group.
GradedSeries cyclic_average(const GradedSeries& p, std::int64_t r, std::int64_t k);

/// cyclic_average of a dimension series, checked to be a nonnegative integral
/// series (NonIntegralResult otherwise).
GradedSeries eigenspace_char(const GradedSeries& p_v, std::int64_t r, std::int64_t k);

/// p_phi^R.
GradedSeries total_char(const GradedSeries& p_phi, std::int64_t R);

using ComponentChars = std::map<IntVector, GradedSeries>;

/// Joint eigenspace series of the block rotations sigma_1..sigma_n on the
/// (r_1 ... r_n)-fold tensor power, for every k in Z/r_1 x ... x Z/r_n.
/// Stage i applies cyclic_average over the exponent group extended by the
/// eigenindices of stages 1..i-1.
ComponentChars nested_component_chars(const GradedSeries& p_v, const IntVector& orders);

/// Character table of the j-th loop component: at loop degree m the graded
/// dimensions are those of the eigenspace (m - j) mod r.
class LoopComponentCharacter {
public:
    LoopComponentCharacter(ComponentChars components, IntVector orders, IntVector shift);

    const IntVector& shift() const noexcept { return shift_; }
    const IntVector& orders() const noexcept { return orders_; }
    IntVector eigenindex_at(std::span<const std::int64_t> loop_degree) const;
    const GradedSeries& at(std::span<const std::int64_t> loop_degree) const;
    mpq_class dimension(std::span<const std::int64_t> loop_degree, std::span<const std::int64_t> alpha) const;

private:
    ComponentChars components_;
    IntVector orders_;
    IntVector shift_;
};

/// Throws std::invalid_argument unless `components` covers all of Gamma-bar.
LoopComponentCharacter assemble_loop_component_char(const ComponentChars& components, const IntVector& orders,
                                                    const IntVector& shift);

}  // namespace loopchar
