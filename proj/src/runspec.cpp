#include "loopchar/runspec.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include "loopchar/error.hpp"
#include "loopchar/numtheory.hpp"

namespace loopchar {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ParseError, path + ": " + what, "see README for the input schema");
}

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) bad(path, std::string("missing required key \"") + key + "\"");
    return obj.at(key);
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<std::int64_t>();
}

std::vector<int> as_int_vector(const json& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::int64_t x = as_int(v[i], path + "[" + std::to_string(i) + "]");
        if (x < INT32_MIN || x > INT32_MAX) bad(path, "integer out of range");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

// Scalar literals may be strings or plain JSON integers.
std::string literal_text(const json& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    bad(path, "expected a scalar literal string");
}

template <typename Fn>
void for_each_literal(const json& generators, Fn&& fn) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const std::string gp = "generators[" + std::to_string(g) + "]";
        const json& terms = member(generators[g], "terms", gp);
        if (!terms.is_array()) bad(gp + ".terms", "expected an array");
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tp = gp + ".terms[" + std::to_string(t) + "]";
            const json& base = member(terms[t], "base", tp);
            if (!base.is_array()) bad(tp + ".base", "expected an array");
            for (std::size_t i = 0; i < base.size(); ++i) {
                const std::string p = tp + ".base[" + std::to_string(i) + "]";
                fn(literal_text(base[i], p), p);
            }
            const json& poly = member(terms[t], "poly", tp);
            if (!poly.is_array()) bad(tp + ".poly", "expected an array");
            for (std::size_t m = 0; m < poly.size(); ++m) {
                const std::string p = tp + ".poly[" + std::to_string(m) + "].coeff";
                fn(literal_text(member(poly[m], "coeff", tp + ".poly[" + std::to_string(m) + "]"), p), p);
            }
        }
    }
}

CycScalar literal(const json& v, const std::string& path, const FieldPtr& field) {
    try {
        return parse_scalar(literal_text(v, path), field);
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what(), e.hint());
    }
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    out << "sha256:";
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

RunSpec parse_run_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("$", "expected a JSON object");

    RunSpec spec;
    spec.input_hash = sha256_hex(json_text);

    const std::int64_t n = as_int(member(doc, "n", "$"), "n");
    if (n < 1 || n > 8) bad("n", "must be between 1 and 8");
    spec.declared_conductor = as_int(member(doc, "conductor", "$"), "conductor");
    if (spec.declared_conductor < 1 || spec.declared_conductor > 5000) bad("conductor", "must be between 1 and 5000");

    const json& generators = member(doc, "generators", "$");
    if (!generators.is_array() || generators.empty()) bad("generators", "expected a non-empty array");

    spec.literal_conductor = 1;
    for_each_literal(generators, [&](const std::string& text, const std::string& path) {
        try {
            for (std::int64_t q : zeta_orders_in(text)) {
                if (q < 1 || q > 5000) bad(path, "zeta order out of range");
                spec.literal_conductor = numtheory::lcm(spec.literal_conductor, q);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ParseError) throw;
            throw Error(ErrorKind::ParseError, path + ": " + e.what(), e.hint());
        }
    });
    const FieldPtr field = CyclotomicField::make(numtheory::lcm(spec.declared_conductor, spec.literal_conductor));

    spec.psi.field = field;
    spec.psi.n = static_cast<std::size_t>(n);
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const std::string gp = "generators[" + std::to_string(g) + "]";
        const json& label = member(generators[g], "label", gp);
        if (!label.is_string()) bad(gp + ".label", "expected a string");
        std::vector<ExpTerm> terms;
        const json& jterms = generators[g].at("terms");
        for (std::size_t t = 0; t < jterms.size(); ++t) {
            const std::string tp = gp + ".terms[" + std::to_string(t) + "]";
            ExpTerm term;
            const json& base = jterms[t].at("base");
            if (base.size() != spec.psi.n) bad(tp + ".base", "expected " + std::to_string(n) + " components");
            for (std::size_t i = 0; i < base.size(); ++i) {
                term.base.push_back(literal(base[i], tp + ".base[" + std::to_string(i) + "]", field));
                if (term.base.back().is_zero()) bad(tp + ".base[" + std::to_string(i) + "]", "base components must be nonzero");
            }
            const json& poly = jterms[t].at("poly");
            for (std::size_t m = 0; m < poly.size(); ++m) {
                const std::string mp = tp + ".poly[" + std::to_string(m) + "]";
                std::vector<int> exps = as_int_vector(member(poly[m], "exps", mp), mp + ".exps");
                if (exps.size() != spec.psi.n) bad(mp + ".exps", "expected " + std::to_string(n) + " exponents");
                for (int e : exps) {
                    if (e < 0) bad(mp + ".exps", "exponents must be non-negative");
                }
                CycScalar c = literal(poly[m].at("coeff"), mp + ".coeff", field);
                auto [it, inserted] = term.poly.try_emplace(exps, c);
                if (!inserted) it->second += c;
            }
            terms.push_back(std::move(term));
        }
        spec.psi.generators.push_back({label.get<std::string>(), ExpPoly::normalize(field, spec.psi.n, std::move(terms))});
    }
    if (doc.contains("extra_weights")) {
        const json& w = doc.at("extra_weights");
        if (!w.is_object()) bad("extra_weights", "expected an object of label -> literal");
        for (const auto& [k, v] : w.items()) {
            spec.psi.extra_weights.emplace_back(k, literal(v, "extra_weights." + k, field).to_string());
        }
    }
    spec.psi.validate();

    spec.truncation = as_int_vector(member(doc, "truncation", "$"), "truncation");
    if (spec.truncation.empty()) bad("truncation", "expected at least one grading variable");
    for (int t : spec.truncation) {
        if (t < 0 || t > 64) bad("truncation", "bounds must be between 0 and 64");
    }

    const json& chr = member(doc, "phi_character", "$");
    spec.phi_character_input = ordered_json::parse(chr.dump());
    if (chr.contains("table") == chr.contains("product")) {
        bad("phi_character", "give exactly one of \"table\" or \"product\"");
    }
    if (chr.contains("table")) {
        const json& table = chr.at("table");
        if (!table.is_array()) bad("phi_character.table", "expected an array");
        std::vector<std::pair<std::vector<int>, mpq_class>> entries;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const std::string p = "phi_character.table[" + std::to_string(i) + "]";
            std::vector<int> degree = as_int_vector(member(table[i], "degree", p), p + ".degree");
            const std::int64_t dim = as_int(member(table[i], "dim", p), p + ".dim");
            if (dim < 0) bad(p + ".dim", "dimensions must be non-negative");
            if (degree.size() != spec.truncation.size()) bad(p + ".degree", "length must match truncation");
            entries.emplace_back(std::move(degree), mpq_class(mpz_class(std::to_string(dim))));
        }
        spec.phi_character = GradedSeries::from_terms(spec.truncation, entries);
    } else {
        const json& product = chr.at("product");
        if (!product.is_array()) bad("phi_character.product", "expected an array");
        std::vector<std::pair<std::vector<int>, int>> factors;
        for (std::size_t i = 0; i < product.size(); ++i) {
            const std::string p = "phi_character.product[" + std::to_string(i) + "]";
            std::vector<int> degree = as_int_vector(member(product[i], "degree", p), p + ".degree");
            const std::int64_t mult = as_int(member(product[i], "mult", p), p + ".mult");
            if (mult < 0 || mult > 1000) bad(p + ".mult", "multiplicity must be between 0 and 1000");
            if (degree.size() != spec.truncation.size()) bad(p + ".degree", "length must match truncation");
            factors.emplace_back(std::move(degree), static_cast<int>(mult));
        }
        spec.phi_character = GradedSeries::product_form(spec.truncation, factors);
    }

    if (doc.contains("box")) {
        spec.box = as_int(doc.at("box"), "box");
        if (spec.box < 0 || spec.box > 1000) bad("box", "must be between 0 and 1000");
    }
    if (doc.contains("budget")) {
        const std::int64_t b = as_int(doc.at("budget"), "budget");
        if (b < 1) bad("budget", "must be positive");
        spec.budget = static_cast<std::uint64_t>(b);
    }
    if (doc.contains("components")) {
        const json& c = doc.at("components");
        if (c.is_string()) {
            if (c.get<std::string>() != "all") bad("components", "expected \"all\" or a list of index vectors");
        } else if (c.is_array()) {
            std::vector<IntVector> list;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const std::vector<int> k = as_int_vector(c[i], "components[" + std::to_string(i) + "]");
                if (k.size() != spec.psi.n) bad("components[" + std::to_string(i) + "]", "expected n entries");
                list.emplace_back(k.begin(), k.end());
            }
            spec.components = std::move(list);
        } else {
            bad("components", "expected \"all\" or a list of index vectors");
        }
    }
    return spec;
}

ordered_json exppoly_to_json(const ExpPoly& f) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : f.terms()) {
        ordered_json base = ordered_json::array();
        for (const auto& a : t.base) base.push_back(a.to_string());
        ordered_json poly = ordered_json::array();
        for (const auto& [mono, c] : t.poly) poly.push_back({{"exps", mono}, {"coeff", c.to_string()}});
        terms.push_back({{"base", std::move(base)}, {"poly", std::move(poly)}});
    }
    return terms;
}

}  // namespace loopchar
