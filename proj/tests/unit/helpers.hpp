#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopchar/charseries.hpp"
#include "loopchar/exppoly.hpp"

namespace testing {

using namespace loopchar;

struct TermSpec {
    std::vector<std::string> base;
    std::vector<std::pair<Monomial, std::string>> poly;
};

inline ExpPoly make_exp(const FieldPtr& field, std::size_t n, const std::vector<TermSpec>& terms) {
    std::vector<ExpTerm> raw;
    for (const auto& t : terms) {
        ExpTerm term;
        for (const auto& b : t.base) term.base.push_back(parse_scalar(b, field));
        for (const auto& [e, c] : t.poly) {
            auto it = term.poly.find(e);
            if (it == term.poly.end()) term.poly.emplace(e, parse_scalar(c, field));
            else it->second += parse_scalar(c, field);
        }
        raw.push_back(std::move(term));
    }
    return ExpPoly::normalize(field, n, std::move(raw));
}

inline PsiSpec make_psi(const FieldPtr& field, std::size_t n, std::vector<ExpPoly> functions) {
    PsiSpec spec{field, n, {}, {}};
    for (std::size_t i = 0; i < functions.size(); ++i) spec.generators.push_back({"h" + std::to_string(i + 1), std::move(functions[i])});
    return spec;
}

// 1-graded series from its coefficient list.
inline GradedSeries series1(std::vector<long> coeffs, int truncation) {
    std::vector<std::pair<std::vector<int>, mpq_class>> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) terms.emplace_back(std::vector<int>{static_cast<int>(i)}, mpq_class(coeffs[i]));
    }
    return GradedSeries::from_terms({truncation}, terms);
}

}  // namespace testing
