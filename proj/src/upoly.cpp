#include "loopchar/upoly.hpp"

#include <sstream>

#include "loopchar/error.hpp"

namespace loopchar {

UPoly::UPoly(FieldPtr field) : field_(std::move(field)) {}

UPoly::UPoly(FieldPtr field, std::vector<CycScalar> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    trim();
}

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UPoly UPoly::from_roots(const FieldPtr& field, const std::vector<RootMultiplicity>& roots) {
    UPoly out(field, {CycScalar(field, 1)});
    for (const auto& [root, mult] : roots) {
        const UPoly linear(field, {-root, CycScalar(field, 1)});
        for (int i = 0; i < mult; ++i) out = out * linear;
    }
    return out;
}

bool UPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

CycScalar UPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : CycScalar(field_); }

CycScalar UPoly::eval(const CycScalar& x) const {
    CycScalar acc(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    const CycScalar inv = coeffs_.back().inverse();
    std::vector<CycScalar> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(x * inv);
    return UPoly(field_, std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<CycScalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), CycScalar(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return UPoly(a.field_, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<CycScalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), CycScalar(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return UPoly(a.field_, std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<CycScalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, CycScalar(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(a.field_, std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<CycScalar> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(a.field_), a};
    std::vector<CycScalar> quo(static_cast<std::size_t>(a.degree() - db + 1), CycScalar(a.field_));
    const CycScalar lead_inv = b.coeffs_.back().inverse();
    for (int i = a.degree(); i >= db; --i) {
        const CycScalar c = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (c.is_zero()) continue;
        quo[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
    }
    return {UPoly(a.field_, std::move(quo)), UPoly(a.field_, std::move(rem))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = divmod(a, b).second.monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        std::string s = coeffs_[i].to_string();
        const bool compound = s.find(' ') != std::string::npos;
        bool negative = false;
        if (!compound && s.front() == '-') {
            negative = true;
            s.erase(0, 1);
        }
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (i == 0 || s != "1") {
            out << (compound ? "(" + s + ")" : s);
            if (i > 0) out << '*';
        }
        if (i == 1) out << var;
        if (i > 1) out << var << '^' << i;
    }
    return out.str();
}

}  // namespace loopchar
