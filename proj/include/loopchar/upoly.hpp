#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopchar/scalars.hpp"

namespace loopchar {

struct RootMultiplicity {
    CycScalar root;
    int multiplicity = 1;
};

/// Dense univariate polynomial over Q(zeta_N), coefficients lowest degree first.
class UPoly {
public:
    explicit UPoly(FieldPtr field);
    UPoly(FieldPtr field, std::vector<CycScalar> coeffs);

    /// prod (t - root)^multiplicity; monic.
    static UPoly from_roots(const FieldPtr& field, const std::vector<RootMultiplicity>& roots);

    const FieldPtr& field() const noexcept { return field_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const;
    const std::vector<CycScalar>& coeffs() const noexcept { return coeffs_; }
    CycScalar coeff(std::size_t i) const;

    CycScalar eval(const CycScalar& x) const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Quotient and remainder; throws DivisionByZero for b = 0.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    /// Monic gcd (zero only if both inputs are zero).
    static UPoly gcd(UPoly a, UPoly b);

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();

    FieldPtr field_;
    std::vector<CycScalar> coeffs_;
};

}  // namespace loopchar
