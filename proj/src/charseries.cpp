#include "loopchar/charseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "loopchar/error.hpp"
#include "loopchar/numtheory.hpp"

namespace loopchar {

GradedSeries::GradedSeries(std::vector<int> truncation, IntVector moduli)
    : truncation_(std::move(truncation)), moduli_(std::move(moduli)) {
    std::size_t size = 1;
    for (int t : truncation_) {
        if (t < 0) throw std::invalid_argument("GradedSeries: truncation bounds must be >= 0");
        radices_.push_back(t + 1);
    }
    for (std::int64_t rho : moduli_) {
        if (rho < 1) throw std::invalid_argument("GradedSeries: eigen moduli must be >= 1");
        radices_.push_back(rho);
    }
    for (std::int64_t r : radices_) size *= static_cast<std::size_t>(r);
    coeffs_.assign(size, 0);
}

GradedSeries GradedSeries::one(std::vector<int> truncation, IntVector moduli) {
    GradedSeries s(std::move(truncation), std::move(moduli));
    s.coeffs_[0] = 1;
    return s;
}

GradedSeries GradedSeries::from_terms(std::vector<int> truncation,
                                      const std::vector<std::pair<std::vector<int>, mpq_class>>& terms) {
    GradedSeries s(std::move(truncation));
    for (const auto& [degree, c] : terms) {
        if (degree.size() != s.rank()) {
            throw Error(ErrorKind::ParseError, "character degree has " + std::to_string(degree.size()) +
                                                   " entries, expected " + std::to_string(s.rank()));
        }
        if (std::any_of(degree.begin(), degree.end(), [](int x) { return x < 0; })) {
            throw Error(ErrorKind::ParseError, "character degrees must be non-negative");
        }
        const IntVector e(degree.begin(), degree.end());
        if (s.in_range(e)) s.add(e, c);
    }
    return s;
}

GradedSeries GradedSeries::product_form(std::vector<int> truncation,
                                        const std::vector<std::pair<std::vector<int>, int>>& factors) {
    GradedSeries result = one(truncation);
    for (const auto& [alpha, mult] : factors) {
        if (alpha.size() != truncation.size()) {
            throw Error(ErrorKind::ParseError, "product factor degree has wrong length");
        }
        if (std::any_of(alpha.begin(), alpha.end(), [](int x) { return x < 0; }) ||
            std::all_of(alpha.begin(), alpha.end(), [](int x) { return x == 0; })) {
            throw Error(ErrorKind::ParseError, "product factor degrees must be non-negative and not all zero");
        }
        if (mult < 0) throw Error(ErrorKind::ParseError, "product factor multiplicities must be >= 0");
        GradedSeries geometric(truncation);
        IntVector e(alpha.size(), 0);
        while (geometric.in_range(e)) {
            geometric.add(e, 1);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += alpha[i];
        }
        result = result * geometric.pow(mult);
    }
    return result;
}

bool GradedSeries::in_range(std::span<const std::int64_t> exponent) const {
    if (exponent.size() != radices_.size()) return false;
    for (std::size_t i = 0; i < truncation_.size(); ++i) {
        if (exponent[i] < 0 || exponent[i] > truncation_[i]) return false;
    }
    return true;
}

std::size_t GradedSeries::offset(std::span<const std::int64_t> exponent) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        const std::int64_t v = i < truncation_.size() ? exponent[i] : numtheory::mod(exponent[i], radices_[i]);
        off = off * static_cast<std::size_t>(radices_[i]) + static_cast<std::size_t>(v);
    }
    return off;
}

IntVector GradedSeries::exponent_at(std::size_t offset) const {
    IntVector e(radices_.size(), 0);
    for (std::size_t i = radices_.size(); i-- > 0;) {
        e[i] = static_cast<std::int64_t>(offset % static_cast<std::size_t>(radices_[i]));
        offset /= static_cast<std::size_t>(radices_[i]);
    }
    return e;
}

void GradedSeries::require_same_shape(const GradedSeries& other, const char* op) const {
    if (truncation_ != other.truncation_ || moduli_ != other.moduli_) {
        throw std::invalid_argument(std::string("GradedSeries ") + op + ": operands have different shapes");
    }
}

mpq_class GradedSeries::coeff(std::span<const std::int64_t> exponent) const {
    if (exponent.size() != radices_.size()) throw std::invalid_argument("GradedSeries::coeff: wrong exponent length");
    if (!in_range(exponent)) return 0;
    return coeffs_[offset(exponent)];
}

void GradedSeries::add(std::span<const std::int64_t> exponent, const mpq_class& value) {
    if (!in_range(exponent)) throw std::out_of_range("GradedSeries::add: exponent outside truncation");
    coeffs_[offset(exponent)] += value;
}

std::vector<std::pair<IntVector, mpq_class>> GradedSeries::terms() const {
    std::vector<std::pair<IntVector, mpq_class>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) out.emplace_back(exponent_at(i), coeffs_[i]);
    }
    return out;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& other) {
    require_same_shape(other, "+");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
    a.require_same_shape(b, "-");
    GradedSeries out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] -= b.coeffs_[i];
    return out;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
    a.require_same_shape(b, "*");
    const auto ta = a.terms();
    const auto tb = b.terms();
    GradedSeries out(a.truncation_, a.moduli_);
    IntVector e(a.radices_.size());
    for (const auto& [ea, ca] : ta) {
        for (const auto& [eb, cb] : tb) {
            bool fits = true;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (i < a.truncation_.size() && e[i] > a.truncation_[i]) {
                    fits = false;
                    break;
                }
            }
            if (fits) out.coeffs_[out.offset(e)] += ca * cb;
        }
    }
    return out;
}

bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.truncation_ == b.truncation_ && a.moduli_ == b.moduli_ && a.coeffs_ == b.coeffs_;
}

GradedSeries GradedSeries::scaled(const mpq_class& factor) const {
    GradedSeries out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    return out;
}

GradedSeries GradedSeries::pow(std::int64_t e) const {
    if (e < 0) throw std::invalid_argument("GradedSeries::pow: negative exponent");
    GradedSeries result = one(truncation_, moduli_);
    GradedSeries base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

bool GradedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool GradedSeries::is_nonnegative_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c >= 0 && c.get_den() == 1; });
}

GradedSeries GradedSeries::truncated(const std::vector<int>& truncation) const {
    if (truncation.size() != truncation_.size()) throw std::invalid_argument("GradedSeries::truncated: rank mismatch");
    GradedSeries out(truncation, moduli_);
    for (const auto& [e, c] : terms()) {
        if (out.in_range(e)) out.add(e, c);
    }
    return out;
}

GradedSeries GradedSeries::eigen_slice(std::span<const std::int64_t> eigenindex) const {
    if (eigenindex.size() != moduli_.size()) throw std::invalid_argument("eigen_slice: wrong eigenindex length");
    GradedSeries out(truncation_);
    const std::size_t d = truncation_.size();
    for (const auto& [e, c] : terms()) {
        bool match = true;
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            if (e[d + j] != numtheory::mod(eigenindex[j], moduli_[j])) match = false;
        }
        if (match) out.add(std::span(e).first(d), c);
    }
    return out;
}

GradedSeries GradedSeries::specialize() const {
    GradedSeries out(truncation_);
    for (const auto& [e, c] : terms()) out.add(std::span(e).first(truncation_.size()), c);
    return out;
}

GradedSeries GradedSeries::with_eigen_coordinate(std::int64_t modulus, std::int64_t value) const {
    IntVector moduli = moduli_;
    moduli.push_back(modulus);
    GradedSeries out(truncation_, std::move(moduli));
    for (auto [e, c] : terms()) {
        e.push_back(numtheory::mod(value, modulus));
        out.add(e, c);
    }
    return out;
}

std::string GradedSeries::to_string() const {
    const auto ts = terms();
    if (ts.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        mpq_class v = c;
        const bool negative = v < 0;
        if (negative) v = -v;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        std::ostringstream mono;
        bool any = false;
        auto factor = [&](const std::string& name, std::int64_t p) {
            if (p == 0) return;
            mono << (any ? "*" : "") << name;
            if (p > 1) mono << '^' << p;
            any = true;
        };
        for (std::size_t i = 0; i < truncation_.size(); ++i) {
            factor(truncation_.size() == 1 ? "X" : "X" + std::to_string(i + 1), e[i]);
        }
        for (std::size_t j = 0; j < moduli_.size(); ++j) factor("Y" + std::to_string(j + 1), e[truncation_.size() + j]);
        if (!any) {
            out << v.get_str();
        } else {
            if (v != 1) out << v.get_str() << '*';
            out << mono.str();
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------

GradedSeries substitute_power(const GradedSeries& p, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("substitute_power: t must be >= 1");
    GradedSeries out(p.truncation(), p.moduli());
    const std::size_t d = p.rank();
    for (auto [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] *= t;
        bool fits = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (e[i] > p.truncation()[i]) fits = false;
        }
        if (fits) out.add(e, c);
    }
    return out;
}

GradedSeries cyclic_average(const GradedSeries& p, std::int64_t r, std::int64_t k) {
    if (r < 1) throw std::invalid_argument("cyclic_average: r must be >= 1");
    GradedSeries sum(p.truncation(), p.moduli());
    for (std::int64_t q : numtheory::divisors(r)) {
        const std::int64_t c = numtheory::ramanujan_sum(q, k);
        if (c == 0) continue;
        sum += substitute_power(p, q).pow(r / q).scaled(c);
    }
    return sum.scaled(mpq_class(1, r));
}

namespace {

void require_integral(const GradedSeries& s, const std::string& what) {
    if (!s.is_nonnegative_integral()) {
        throw Error(ErrorKind::NonIntegralResult, what + " has a negative or non-integral coefficient: " + s.to_string(),
                    "this indicates an implementation bug; please report the input");
    }
}

}  // namespace

GradedSeries eigenspace_char(const GradedSeries& p_v, std::int64_t r, std::int64_t k) {
    GradedSeries out = cyclic_average(p_v, r, k);
    require_integral(out, "eigenspace character (r=" + std::to_string(r) + ", k=" + std::to_string(k) + ")");
    return out;
}

GradedSeries total_char(const GradedSeries& p_phi, std::int64_t R) {
    if (R < 1) throw std::invalid_argument("total_char: R must be >= 1");
    return p_phi.pow(R);
}

ComponentChars nested_component_chars(const GradedSeries& p_v, const IntVector& orders) {
    if (p_v.has_eigen_coordinates()) throw std::invalid_argument("nested_component_chars: expects a plain graded series");
    GradedSeries stage = p_v;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const std::int64_t r = orders[i];
        if (r < 1) throw std::invalid_argument("nested_component_chars: orders must be >= 1");
        IntVector moduli = stage.moduli();
        moduli.push_back(r);
        GradedSeries next(stage.truncation(), moduli);
        for (std::int64_t k = 0; k < r; ++k) next += cyclic_average(stage, r, k).with_eigen_coordinate(r, k);
        require_integral(next, "stage " + std::to_string(i + 1) + " eigen-extended series");
        stage = std::move(next);
    }
    ComponentChars out;
    IntVector k(orders.size(), 0);
    for (;;) {
        out.emplace(k, stage.eigen_slice(k));
        std::size_t i = k.size();
        while (i > 0 && ++k[i - 1] == orders[i - 1]) k[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------

LoopComponentCharacter::LoopComponentCharacter(ComponentChars components, IntVector orders, IntVector shift)
    : components_(std::move(components)), orders_(std::move(orders)), shift_(std::move(shift)) {}

IntVector LoopComponentCharacter::eigenindex_at(std::span<const std::int64_t> loop_degree) const {
    IntVector k(orders_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = numtheory::mod(loop_degree[i] - shift_[i], orders_[i]);
    return k;
}

const GradedSeries& LoopComponentCharacter::at(std::span<const std::int64_t> loop_degree) const {
    return components_.at(eigenindex_at(loop_degree));
}

mpq_class LoopComponentCharacter::dimension(std::span<const std::int64_t> loop_degree,
                                            std::span<const std::int64_t> alpha) const {
    return at(loop_degree).coeff(alpha);
}

LoopComponentCharacter assemble_loop_component_char(const ComponentChars& components, const IntVector& orders,
                                                    const IntVector& shift) {
    std::int64_t index = 1;
    for (std::int64_t r : orders) index *= r;
    if (shift.size() != orders.size()) throw std::invalid_argument("assemble_loop_component_char: shift has wrong length");
    if (static_cast<std::int64_t>(components.size()) != index) {
        throw std::invalid_argument("assemble_loop_component_char: components must cover every eigenindex");
    }
    for (const auto& [k, s] : components) {
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] < 0 || k[i] >= orders[i]) throw std::invalid_argument("assemble_loop_component_char: bad eigenindex");
        }
    }
    IntVector reduced = shift;
    for (std::size_t i = 0; i < reduced.size(); ++i) reduced[i] = numtheory::mod(reduced[i], orders[i]);
    return LoopComponentCharacter(components, orders, std::move(reduced));
}

}  // namespace loopchar
