#include "loopchar/scalars.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "loopchar/error.hpp"
#include "loopchar/numtheory.hpp"

namespace loopchar {

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact quotient a / b for monic b.
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() - 1 < db) return {0};
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const mpz_class c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

IntPoly cyclotomic(std::int64_t n, std::map<std::int64_t, IntPoly>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d : numtheory::divisors(n)) {
        if (d == n) continue;
        p = divide_exact(std::move(p), cyclotomic(d, memo));
    }
    trim(p);
    memo.emplace(n, p);
    return p;
}

Error conductor_mismatch(std::int64_t a, std::int64_t b) {
    return Error(ErrorKind::ConductorMismatch,
                 "scalars from Q(zeta_" + std::to_string(a) + ") and Q(zeta_" + std::to_string(b) + ") mixed",
                 "declare a common conductor");
}

}  // namespace

CyclotomicField::CyclotomicField(std::int64_t conductor) : conductor_(conductor) {
    if (conductor < 1) {
        throw Error(ErrorKind::ConductorMismatch, "conductor must be >= 1, got " + std::to_string(conductor));
    }
    std::map<std::int64_t, IntPoly> memo;
    phi_poly_ = cyclotomic(conductor, memo);
    degree_ = phi_poly_.size() - 1;

    // x^j reduced mod Phi_N, built by repeated multiplication by x.
    powers_.reserve(static_cast<std::size_t>(conductor));
    IntPoly cur(degree_, 0);
    cur[0] = 1;
    for (std::int64_t j = 0; j < conductor; ++j) {
        powers_.push_back(cur);
        mpz_class carry = cur[degree_ - 1];
        for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (carry != 0) {
            for (std::size_t i = 0; i < degree_; ++i) cur[i] -= carry * phi_poly_[i];
        }
    }
    for (std::int64_t j = 2; j < conductor; ++j) {
        if (std::gcd(j, conductor) == 1) galois_.push_back(j);
    }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::make(std::int64_t conductor) {
    static std::mutex mutex;
    static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[conductor];
    if (!slot) slot = std::make_shared<const CyclotomicField>(conductor);
    return slot;
}

const std::vector<mpz_class>& CyclotomicField::power(std::int64_t j) const {
    return powers_[static_cast<std::size_t>(numtheory::mod(j, conductor_))];
}

bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(a.coeffs[i], b.coeffs[i]);
        if (c != 0) return c < 0;
    }
    return a.coeffs.size() < b.coeffs.size();
}

// ---------------------------------------------------------------------------

CycScalar::CycScalar() : CycScalar(CyclotomicField::make(1)) {}

CycScalar::CycScalar(FieldPtr field) : field_(std::move(field)), num_(field_->degree(), 0) {}

CycScalar::CycScalar(FieldPtr field, const mpq_class& value) : CycScalar(std::move(field)) {
    num_[0] = value.get_num();
    den_ = value.get_den();
}

CycScalar CycScalar::root_of_unity(const FieldPtr& field, std::int64_t order, std::int64_t power) {
    if (order < 1 || field->conductor() % order != 0) {
        Error err(ErrorKind::ConductorMismatch,
                  "root of unity of order " + std::to_string(order) + " is not in Q(zeta_" +
                      std::to_string(field->conductor()) + ")",
                  "use a conductor divisible by " + std::to_string(order));
        throw err;
    }
    CycScalar out(field);
    out.num_ = field->power(field->conductor() / order * numtheory::mod(power, order));
    return out;
}

void CycScalar::check_same_field(const CycScalar& other) const {
    if (field_ != other.field_ && field_->conductor() != other.field_->conductor()) {
        throw conductor_mismatch(field_->conductor(), other.field_->conductor());
    }
}

void CycScalar::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    mpz_class g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (is_zero()) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

bool CycScalar::is_zero() const noexcept {
    for (const auto& c : num_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycScalar::is_one() const noexcept {
    if (den_ != 1 || num_[0] != 1) return false;
    for (std::size_t i = 1; i < num_.size(); ++i) {
        if (num_[i] != 0) return false;
    }
    return true;
}

bool CycScalar::is_rational() const noexcept {
    for (std::size_t i = 1; i < num_.size(); ++i) {
        if (num_[i] != 0) return false;
    }
    return true;
}

mpq_class CycScalar::coeff(std::size_t i) const {
    mpq_class q(num_.at(i), den_);
    q.canonicalize();
    return q;
}

CycScalar CycScalar::operator-() const {
    CycScalar out = *this;
    for (auto& c : out.num_) c = -c;
    return out;
}

CycScalar& CycScalar::operator+=(const CycScalar& other) {
    check_same_field(other);
    if (den_ == other.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
    } else {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * other.den_ + other.num_[i] * den_;
        den_ *= other.den_;
    }
    normalize();
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& other) { return *this += -other; }

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
    a.check_same_field(b);
    const std::size_t deg = a.num_.size();
    std::vector<mpz_class> prod(2 * deg - 1, 0);
    for (std::size_t i = 0; i < deg; ++i) {
        if (a.num_[i] == 0) continue;
        for (std::size_t j = 0; j < deg; ++j) {
            if (b.num_[j] != 0) mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
    }
    CycScalar out(a.field_);
    for (std::size_t j = 0; j < prod.size(); ++j) {
        if (prod[j] == 0) continue;
        if (j < deg) {
            out.num_[j] += prod[j];
            continue;
        }
        const auto& red = a.field_->power(static_cast<std::int64_t>(j));
        for (std::size_t t = 0; t < deg; ++t) {
            if (red[t] != 0) mpz_addmul(out.num_[t].get_mpz_t(), prod[j].get_mpz_t(), red[t].get_mpz_t());
        }
    }
    out.den_ = a.den_ * b.den_;
    out.normalize();
    return out;
}

CycScalar& CycScalar::operator*=(const CycScalar& other) { return *this = *this * other; }

CycScalar& CycScalar::operator*=(const mpz_class& k) {
    for (auto& c : num_) c *= k;
    normalize();
    return *this;
}

CycScalar& CycScalar::operator/=(const CycScalar& other) { return *this *= other.inverse(); }

bool operator==(const CycScalar& a, const CycScalar& b) {
    return a.field_->conductor() == b.field_->conductor() && a.den_ == b.den_ && a.num_ == b.num_;
}

CycScalar CycScalar::galois_conjugate(std::int64_t j) const {
    CycScalar out(field_);
    const std::size_t deg = num_.size();
    for (std::size_t i = 0; i < deg; ++i) {
        if (num_[i] == 0) continue;
        const auto& img = field_->power(static_cast<std::int64_t>(i) * j);
        for (std::size_t t = 0; t < deg; ++t) {
            if (img[t] != 0) mpz_addmul(out.num_[t].get_mpz_t(), num_[i].get_mpz_t(), img[t].get_mpz_t());
        }
    }
    out.den_ = den_;
    out.normalize();
    return out;
}

// a^{-1} = (prod of the non-trivial conjugates) / Norm(a).
CycScalar CycScalar::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(conductor()) + ")");
    if (is_rational()) {
        mpq_class q(num_[0], den_);
        q.canonicalize();
        return CycScalar(field_, 1 / q);
    }
    CycScalar cofactor(field_, 1);
    for (std::int64_t j : field_->galois_exponents()) cofactor *= galois_conjugate(j);
    const CycScalar norm = *this * cofactor;
    if (!norm.is_rational()) {
        throw Error(ErrorKind::DivisionByZero, "internal: field norm is not rational");
    }
    mpq_class n(norm.num_[0], norm.den_);
    n.canonicalize();
    return cofactor * CycScalar(field_, 1 / n);
}

CycScalar CycScalar::pow(std::int64_t exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    CycScalar result(field_, 1);
    CycScalar base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

std::optional<std::int64_t> CycScalar::multiplicative_order() const {
    if (is_zero()) return std::nullopt;
    // Roots of unity in Q(zeta_N) have order dividing lcm(2, N). Their
    // coefficients in the power basis are integers.
    if (den_ != 1) return std::nullopt;
    const std::int64_t bound = numtheory::lcm(2, conductor());
    for (std::int64_t d : numtheory::divisors(bound)) {
        if (pow(d).is_one()) return d;
    }
    return std::nullopt;
}

CycScalar CycScalar::embed(const FieldPtr& larger) const {
    if (larger->conductor() % conductor() != 0) {
        throw Error(ErrorKind::ConductorMismatch, "cannot embed Q(zeta_" + std::to_string(conductor()) +
                                                      ") into Q(zeta_" + std::to_string(larger->conductor()) + ")");
    }
    const std::int64_t step = larger->conductor() / conductor();
    CycScalar out(larger);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const auto& img = larger->power(static_cast<std::int64_t>(i) * step);
        for (std::size_t t = 0; t < img.size(); ++t) {
            if (img[t] != 0) mpz_addmul(out.num_[t].get_mpz_t(), num_[i].get_mpz_t(), img[t].get_mpz_t());
        }
    }
    out.den_ = den_;
    out.normalize();
    return out;
}

CanonicalKey CycScalar::canonical_key() const {
    CanonicalKey key;
    key.coeffs.reserve(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) key.coeffs.push_back(coeff(i));
    return key;
}

int CycScalar::compare(const CycScalar& other) const {
    check_same_field(other);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        const int c = cmp(num_[i] * other.den_, other.num_[i] * den_);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string CycScalar::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        mpq_class c = coeff(i);
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << c.get_str();
        } else {
            if (c != 1) out << c.get_str() << '*';
            out << "zeta(" << conductor() << ")^" << i;
        }
    }
    return out.str();
}

std::complex<double> CycScalar::to_complex() const {
    std::complex<double> sum = 0;
    const double angle = 2 * std::numbers::pi / static_cast<double>(conductor());
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        sum += coeff(i).get_d() * std::polar(1.0, angle * static_cast<double>(i));
    }
    return sum;
}

std::optional<std::int64_t> same_xi_orbit(const CycScalar& a, const CycScalar& b, std::int64_t r) {
    for (std::int64_t ell = 0; ell < r; ++ell) {
        if (CycScalar::root_of_unity(a.field(), r, ell) * a == b) return ell;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Literal parser

namespace {

class LiteralParser {
public:
    LiteralParser(std::string_view text, const FieldPtr* field) : text_(text), field_(field) {}

    CycScalar parse() {
        CycScalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

    // Walks the literal only to collect zeta orders; no arithmetic.
    std::vector<std::int64_t> scan_orders() {
        std::vector<std::int64_t> orders;
        for (std::size_t p = text_.find("zeta"); p != std::string_view::npos; p = text_.find("zeta", p + 4)) {
            pos_ = p + 4;
            skip_ws();
            expect('(');
            orders.push_back(integer());
            skip_ws();
            expect(')');
        }
        return orders;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError,
                    "bad scalar literal \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what,
                    "literals are rationals like 3/2 and symbols zeta(q)^j joined by + - * / and parentheses");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::int64_t integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ - start > 18) fail("integer too large");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    CycScalar expr() {
        CycScalar v = term();
        for (;;) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    CycScalar term() {
        CycScalar v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                CycScalar d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    CycScalar unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    CycScalar power() {
        CycScalar base = atom();
        if (!accept('^')) return base;
        bool negative = false;
        if (accept('-')) negative = true;
        const std::int64_t e = integer();
        if (negative && base.is_zero()) fail("negative power of zero");
        return base.pow(negative ? -e : e);
    }

    CycScalar atom() {
        skip_ws();
        if (accept('(')) {
            CycScalar v = expr();
            expect(')');
            return v;
        }
        if (text_.substr(pos_, 4) == "zeta") {
            pos_ += 4;
            expect('(');
            const std::int64_t q = integer();
            expect(')');
            if (q < 1 || (*field_)->conductor() % q != 0) {
                fail("zeta(" + std::to_string(q) + ") is not in Q(zeta_" + std::to_string((*field_)->conductor()) + ")");
            }
            return CycScalar::root_of_unity(*field_, q, 1);
        }
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number, zeta(q) or '('");
        return CycScalar(*field_, mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }

    std::string_view text_;
    const FieldPtr* field_;
    std::size_t pos_ = 0;
};

}  // namespace

CycScalar parse_scalar(std::string_view text, const FieldPtr& field) {
    return LiteralParser(text, &field).parse();
}

std::vector<std::int64_t> zeta_orders_in(std::string_view text) {
    return LiteralParser(text, nullptr).scan_orders();
}

}  // namespace loopchar
