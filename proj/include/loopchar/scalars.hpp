#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loopchar {

/// The cyclotomic field Q(zeta_N), stored as Q[x] / Phi_N(x) in the power
/// basis 1, x, ..., x^{phi(N)-1}. Fields are immutable and shared; obtain one
/// through `CyclotomicField::make`.
class CyclotomicField {
public:
    static std::shared_ptr<const CyclotomicField> make(std::int64_t conductor);

    std::int64_t conductor() const noexcept { return conductor_; }
    std::size_t degree() const noexcept { return degree_; }

    /// Coefficients of Phi_N, lowest degree first; monic.
    const std::vector<mpz_class>& cyclotomic_polynomial() const noexcept { return phi_poly_; }

    /// x^j mod Phi_N for 0 <= j < N (x^N = 1, so this covers every power).
    const std::vector<mpz_class>& power(std::int64_t j) const;

    /// Units mod N other than 1: the exponents of the non-trivial Galois automorphisms.
    const std::vector<std::int64_t>& galois_exponents() const noexcept { return galois_; }

    explicit CyclotomicField(std::int64_t conductor);

private:
    std::int64_t conductor_;
    std::size_t degree_;
    std::vector<mpz_class> phi_poly_;
    std::vector<std::vector<mpz_class>> powers_;
    std::vector<std::int64_t> galois_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// Lexicographic key on the reduced rational coefficient vector.
struct CanonicalKey {
    std::vector<mpq_class> coeffs;

    friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) { return a.coeffs == b.coeffs; }
    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b);
};

/// Exact element of Q(zeta_N). Values are kept in lowest terms as an integer
/// vector over a single positive denominator, so equality is coefficient-wise.
///
/// Arithmetic between scalars of different conductors throws
/// ConductorMismatch; use `embed` to move a value into a larger field.
class CycScalar {
public:
    /// Zero of Q (conductor 1). Mostly useful as a placeholder.
    CycScalar();
    explicit CycScalar(FieldPtr field);
    CycScalar(FieldPtr field, const mpq_class& value);
    CycScalar(FieldPtr field, std::int64_t value) : CycScalar(std::move(field), mpq_class(value)) {}

    /// zeta_order^power. Requires order | N (ConductorMismatch otherwise).
    static CycScalar root_of_unity(const FieldPtr& field, std::int64_t order, std::int64_t power);

    const FieldPtr& field() const noexcept { return field_; }
    std::int64_t conductor() const noexcept { return field_->conductor(); }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_rational() const noexcept;

    /// Coefficient of x^i as a rational.
    mpq_class coeff(std::size_t i) const;

    CycScalar operator-() const;
    CycScalar& operator+=(const CycScalar& other);
    CycScalar& operator-=(const CycScalar& other);
    CycScalar& operator*=(const CycScalar& other);
    CycScalar& operator/=(const CycScalar& other);
    CycScalar& operator*=(const mpz_class& k);

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
    friend CycScalar operator*(CycScalar a, const mpz_class& k) { return a *= k; }

    friend bool operator==(const CycScalar& a, const CycScalar& b);

    /// Throws DivisionByZero for zero.
    CycScalar inverse() const;
    CycScalar pow(std::int64_t exponent) const;

    /// Image under the Galois automorphism zeta -> zeta^j (gcd(j, N) = 1).
    CycScalar galois_conjugate(std::int64_t j) const;

    /// The order of this element if it is a root of unity.
    std::optional<std::int64_t> multiplicative_order() const;

    /// Same element viewed in Q(zeta_M); requires N | M.
    CycScalar embed(const FieldPtr& larger) const;

    CanonicalKey canonical_key() const;
    /// Three-way comparison consistent with canonical_key ordering.
    int compare(const CycScalar& other) const;

    /// Literal form accepted by `parse_scalar`, e.g. "-3/2*zeta(12)^1 + 2".
    std::string to_string() const;
    std::complex<double> to_complex() const;

private:
    void check_same_field(const CycScalar& other) const;
    void normalize();

    FieldPtr field_;
    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
};

/// ell in 0..r-1 with b = zeta_r^ell * a, if one exists.
std::optional<std::int64_t> same_xi_orbit(const CycScalar& a, const CycScalar& b, std::int64_t r);

/// Parses a scalar literal: rationals ("3/2", "-2"), symbols "zeta(q)" with
/// q | N, combined with + - * / ^ (integer exponents) and parentheses.
CycScalar parse_scalar(std::string_view text, const FieldPtr& field);

/// Every q appearing as "zeta(q)" in the literal, in order of appearance.
/// Used to find the conductor an input file actually needs.
std::vector<std::int64_t> zeta_orders_in(std::string_view text);

}  // namespace loopchar
