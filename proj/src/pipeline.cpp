#include "loopchar/pipeline.hpp"

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

#include "loopchar/error.hpp"
#include "loopchar/numtheory.hpp"
#include "loopchar/oracle.hpp"

namespace loopchar {

using ordered_json = nlohmann::ordered_json;

Mode parse_mode(const std::string& name) {
    if (name == "analyze") return Mode::Analyze;
    if (name == "characters") return Mode::Characters;
    if (name == "verify") return Mode::Verify;
    if (name == "all") return Mode::All;
    throw Error(ErrorKind::ParseError, "unknown mode '" + name + "'", "use analyze, characters, verify or all");
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Analyze: return "analyze";
        case Mode::Characters: return "characters";
        case Mode::Verify: return "verify";
        case Mode::All: return "all";
    }
    return "all";
}

namespace {

ordered_json coefficient_json(const mpq_class& c) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return c.get_str();
}

ordered_json verdict_json(const std::string& name, const Verdict& v) {
    ordered_json j;
    j["name"] = name;
    j["passed"] = v.passed;
    if (v.box > 0) j["box"] = v.box;
    if (!v.passed) {
        j["witness"] = v.witness;
        j["detail"] = v.detail;
    }
    return j;
}

Verdict compare_series(const GradedSeries& expected, const GradedSeries& actual, const IntVector& where,
                       const std::string& what) {
    if (expected == actual) return {};
    return Verdict::fail(where, what + ": expected " + expected.to_string() + ", got " + actual.to_string());
}

std::string join(const IntVector& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ')';
    return out.str();
}

}  // namespace

ordered_json series_to_json(const GradedSeries& s) {
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({{"degree", e}, {"dim", coefficient_json(c)}});
    return {{"text", s.to_string()}, {"terms", std::move(terms)}};
}

RunManifest run_pipeline(const RunSpec& spec, const PipelineOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const bool want_analysis = options.mode == Mode::Analyze || options.mode == Mode::All;
    const bool want_characters = options.mode == Mode::Characters || options.mode == Mode::All;
    const bool want_checks = options.mode == Mode::Verify || options.mode == Mode::All;

    RunManifest result;
    ordered_json& doc = result.document;
    doc["tool"] = "loopchar";
    doc["versions"] = {{"loopchar", kVersion}, {"gmp", gmp_version}};
    doc["input_hash"] = spec.input_hash;
    doc["mode"] = to_string(options.mode);
    doc["seed"] = options.seed;

    // Conductor: the declared field must hold every literal and every zeta_{r_i}.
    PsiSpec psi = spec.psi;
    const LatticeDetection detection = detect_lattice(psi);
    const std::int64_t required = numtheory::lcm(detection.required_conductor, spec.declared_conductor);
    bool extended = false;
    if (required != spec.declared_conductor) {
        if (!options.extend_conductor) {
            Error err(ErrorKind::ConductorTooSmall,
                      "conductor " + std::to_string(spec.declared_conductor) + " is too small for this input (support lattice r = " +
                          join(detection.orders) + ", literal zeta orders need " + std::to_string(spec.literal_conductor) + ")",
                      "set \"conductor\": " + std::to_string(required) + " or pass --extend-conductor");
            err.suggested_conductor = required;
            throw err;
        }
        extended = true;
    }
    if (psi.field->conductor() != required) psi = psi.embed(CyclotomicField::make(required));
    doc["conductor"] = {{"declared", spec.declared_conductor},
                        {"literals", spec.literal_conductor},
                        {"used", required},
                        {"extended", extended}};

    const SupportLattice lattice = support_lattice(psi);
    const auto gamma_bar = lattice.elements();
    doc["lattice"] = {{"r", lattice.orders()},
                      {"R", lattice.index()},
                      {"gamma_bar", gamma_bar},
                      {"non_diagonal_symmetry", detection.non_diagonal_symmetry}};

    std::vector<IntVector> requested = gamma_bar;
    if (spec.components) {
        requested.clear();
        for (const auto& k : *spec.components) requested.push_back(lattice.reduce(k));
    }

    // Datum-level analysis (also needed by the checks).
    std::optional<PsiSpec> phi;
    std::optional<AnnihilatorData> annihilators;
    std::optional<AnnihilatorData> factored;
    if (want_analysis || want_checks) {
        phi = extract_phi(psi, lattice);
        annihilators = annihilator_polys(psi);
        factored = orbit_factorization(*annihilators, lattice);
    }

    std::size_t coprime_pairs = 0;
    std::optional<std::pair<IntVector, IntVector>> non_coprime;
    if (factored) {
        for (const auto& j : gamma_bar) {
            for (const auto& jp : gamma_bar) {
                if (j == jp) continue;
                ++coprime_pairs;
                if (!non_coprime && !ideal_coprimality(*factored, j, jp)) non_coprime.emplace(j, jp);
            }
        }
    }

    if (want_analysis) {
        ordered_json analysis;
        analysis["orbit_representative_rule"] = "minimal canonical key (lexicographic on reduced coefficient vectors)";
        ordered_json reps = ordered_json::object();
        ordered_json phi_json = ordered_json::object();
        for (const auto& g : phi->generators) {
            ordered_json bases = ordered_json::array();
            for (const auto& t : g.function.terms()) {
                ordered_json b = ordered_json::array();
                for (const auto& a : t.base) b.push_back(a.to_string());
                bases.push_back(std::move(b));
            }
            reps[g.label] = std::move(bases);
            phi_json[g.label] = exppoly_to_json(g.function);
        }
        analysis["B"] = std::move(reps);
        analysis["phi"] = std::move(phi_json);
        ordered_json twists = ordered_json::array();
        for (const auto& k : gamma_bar) {
            const PsiSpec tw = twist(*phi, lattice, k);
            ordered_json gens = ordered_json::object();
            for (const auto& g : tw.generators) gens[g.label] = exppoly_to_json(g.function);
            twists.push_back({{"k", k}, {"generators", std::move(gens)}});
        }
        analysis["twists"] = std::move(twists);
        ordered_json ann = ordered_json::array();
        for (std::size_t i = 0; i < factored->variables.size(); ++i) {
            const auto& var = factored->variables[i];
            ordered_json coeffs = ordered_json::array();
            for (const auto& c : var.poly.coeffs()) coeffs.push_back(c.to_string());
            ordered_json roots = ordered_json::array();
            for (const auto& r : var.roots) roots.push_back({{"root", r.root.to_string()}, {"multiplicity", r.multiplicity}});
            ordered_json reps_i = ordered_json::array();
            for (const auto& r : var.orbit_representatives) {
                reps_i.push_back({{"root", r.root.to_string()}, {"multiplicity", r.multiplicity}});
            }
            ordered_json factors = ordered_json::array();
            for (std::size_t ell = 0; ell < var.factors.size(); ++ell) {
                factors.push_back({{"ell", ell + 1}, {"P", var.factors[ell].to_string("t" + std::to_string(i + 1))}});
            }
            ann.push_back({{"variable", i + 1},
                           {"P", var.poly.to_string("t" + std::to_string(i + 1))},
                           {"coefficients", std::move(coeffs)},
                           {"degree", var.poly.degree()},
                           {"roots", std::move(roots)},
                           {"orbit_size", var.orbit_size},
                           {"orbit_representatives", std::move(reps_i)},
                           {"factors", std::move(factors)}});
        }
        analysis["annihilators"] = std::move(ann);
        analysis["coprimality"] = {{"pairs_checked", coprime_pairs},
                                   {"all_coprime", !non_coprime.has_value()},
                                   {"crt_dimension_identity", crt_dimension_identity(*factored)}};
        doc["analysis"] = std::move(analysis);
    }

    // Characters.
    const GradedSeries total = total_char(spec.phi_character, lattice.index());
    ComponentChars components;
    if (want_characters || want_checks) components = nested_component_chars(spec.phi_character, lattice.orders());

    if (want_characters) {
        ordered_json chars;
        chars["truncation"] = spec.truncation;
        chars["phi_character"] = series_to_json(spec.phi_character);
        chars["total"] = series_to_json(total);
        ordered_json comps = ordered_json::array();
        for (const auto& k : requested) comps.push_back({{"k", k}, {"series", series_to_json(components.at(k))}});
        chars["components"] = std::move(comps);
        ordered_json tables = ordered_json::array();
        const IntVector lo(psi.n, -options.loop_box);
        const IntVector hi(psi.n, options.loop_box);
        for (const auto& j : requested) {
            const LoopComponentCharacter table = assemble_loop_component_char(components, lattice.orders(), j);
            ordered_json rows = ordered_json::array();
            for_each_point(lo, hi, [&](const IntVector& m) {
                rows.push_back({{"loop_degree", m}, {"eigenindex", table.eigenindex_at(m)}});
            });
            tables.push_back({{"shift", j}, {"loop_box", options.loop_box}, {"rows", std::move(rows)}});
        }
        chars["loop_tables"] = std::move(tables);
        doc["characters"] = std::move(chars);
    }

    if (want_checks) {
        ordered_json checks = ordered_json::array();
        auto record = [&](const std::string& name, const Verdict& v) {
            checks.push_back(verdict_json(name, v));
            if (!v.passed) result.all_checks_passed = false;
        };

        record("reconstruct_psi_from_twists", reconstruct_check(psi, *phi, lattice, spec.box));
        {
            const LatticeDetection phi_lat = detect_lattice(*phi);
            const bool trivial = std::all_of(phi_lat.orders.begin(), phi_lat.orders.end(), [](auto r) { return r == 1; });
            record("phi_lattice_trivial", trivial ? Verdict{} : Verdict::fail(phi_lat.orders, "phi has a nontrivial support lattice"));
        }
        record("relation_R", relation_R_check(psi, *annihilators, spec.box));
        for (const auto& g : psi.generators) {
            record("vanishing_off_lattice[" + g.label + "]", oracle::brute_vanishing_check(g.function, lattice, spec.box));
        }
        if (non_coprime) {
            IntVector w = non_coprime->first;
            w.insert(w.end(), non_coprime->second.begin(), non_coprime->second.end());
            record("ideal_coprimality", Verdict::fail(w, "ideals I_J and I_J' share a root"));
        } else {
            record("ideal_coprimality", {});
        }
        record("crt_dimension_identity",
               crt_dimension_identity(*factored) ? Verdict{} : Verdict::fail({}, "deg P_i != sum of deg P_{i,ell}"));

        // Character-level checks.
        const auto basis = oracle::GradedBasis::from_series(spec.phi_character);
        for (std::size_t i = 0; i < lattice.rank(); ++i) {
            const std::int64_t r = lattice.orders()[i];
            GradedSeries sum(spec.truncation);
            const auto brute = oracle::brute_eigenspace_dims(basis, r, spec.truncation, spec.budget);
            Verdict oracle_v;
            for (std::int64_t k = 0; k < r; ++k) {
                const GradedSeries formula = eigenspace_char(spec.phi_character, r, k);
                sum += formula;
                if (oracle_v) oracle_v = compare_series(brute[static_cast<std::size_t>(k)], formula, {k}, "eigenspace k");
            }
            const std::string tag = "[r=" + std::to_string(r) + "]";
            record("single_stage_oracle" + tag, oracle_v);
            record("single_stage_partition" + tag,
                   compare_series(spec.phi_character.pow(r), sum, {}, "sum over k of eigenspace characters"));
        }
        {
            const auto brute = oracle::brute_multi_eigenspace_dims(basis, lattice.orders(), spec.truncation, spec.budget);
            Verdict v;
            for (const auto& k : gamma_bar) {
                v = compare_series(brute.at(k), components.at(k), k, "joint eigenspace " + join(k));
                if (!v) break;
            }
            record("oracle_equivalence", v);
        }
        {
            GradedSeries sum(spec.truncation);
            bool integral = true;
            for (const auto& [k, s] : components) {
                sum += s;
                integral = integral && s.is_nonnegative_integral();
            }
            record("partition_identity", compare_series(total, sum, {}, "sum over Gamma-bar of component characters"));
            record("integrality", integral ? Verdict{} : Verdict::fail({}, "a component character is not a nonnegative integral series"));
        }
        doc["verification"] = {{"checks", std::move(checks)}, {"all_passed", result.all_checks_passed}};
    }

    const auto elapsed = std::chrono::steady_clock::now() - started;
    doc["timing"] = {{"total_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
    return result;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace {

std::string cell(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string json_tuple(const ordered_json& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell(v[i]);
    return "(" + s + ")";
}

// Every degree vector in the truncation box, first coordinate slowest.
std::vector<ordered_json> degree_columns(const ordered_json& truncation) {
    std::vector<ordered_json> cols;
    IntVector lo(truncation.size(), 0);
    IntVector hi;
    for (const auto& t : truncation) hi.push_back(t.get<std::int64_t>());
    for_each_point(lo, hi, [&](const IntVector& a) { cols.emplace_back(a); });
    return cols;
}

std::map<std::string, std::string> dims_by_degree(const ordered_json& series) {
    std::map<std::string, std::string> out;
    for (const auto& t : series.at("terms")) out[t.at("degree").dump()] = cell(t.at("dim"));
    return out;
}

void render_dimension_rows(std::ostringstream& out, const std::vector<ordered_json>& cols,
                           const std::vector<std::pair<std::string, ordered_json>>& rows) {
    std::size_t label_w = 6;
    for (const auto& [label, s] : rows) label_w = std::max(label_w, label.size());
    std::vector<std::size_t> widths;
    for (const auto& c : cols) widths.push_back(c.size() == 1 ? cell(c[0]).size() : json_tuple(c).size());
    std::vector<std::map<std::string, std::string>> values;
    for (const auto& [label, s] : rows) {
        values.push_back(dims_by_degree(s));
        for (std::size_t i = 0; i < cols.size(); ++i) {
            auto it = values.back().find(cols[i].dump());
            if (it != values.back().end()) widths[i] = std::max(widths[i], it->second.size());
        }
    }
    out << "    " << std::left << std::setw(static_cast<int>(label_w)) << "alpha" << " |";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << ' ' << std::right << std::setw(static_cast<int>(widths[i]))
            << (cols[i].size() == 1 ? cell(cols[i][0]) : json_tuple(cols[i]));
    }
    out << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << "    " << std::left << std::setw(static_cast<int>(label_w)) << rows[r].first << " |";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            auto it = values[r].find(cols[i].dump());
            out << ' ' << std::right << std::setw(static_cast<int>(widths[i])) << (it == values[r].end() ? "0" : it->second);
        }
        out << '\n';
    }
}

}  // namespace

std::string render_table(const ordered_json& m) {
    std::ostringstream out;
    out << "loopchar " << cell(m.at("versions").at("loopchar")) << "   mode: " << cell(m.at("mode")) << '\n';
    out << "input: " << cell(m.at("input_hash")) << '\n';
    const auto& cond = m.at("conductor");
    out << "conductor: declared " << cond.at("declared") << ", used " << cond.at("used")
        << (cond.at("extended").get<bool>() ? " (extended)" : "") << '\n';
    const auto& lat = m.at("lattice");
    out << "support lattice: r = " << json_tuple(lat.at("r")) << ", R = " << lat.at("R") << '\n';
    if (lat.at("non_diagonal_symmetry").get<bool>()) {
        out << "  note: the datum is also invariant under a non-diagonal twist\n";
    }

    if (m.contains("analysis")) {
        const auto& a = m.at("analysis");
        out << "\nphi (orbit representatives, " << cell(a.at("orbit_representative_rule")) << "):\n";
        for (const auto& [label, terms] : a.at("phi").items()) {
            out << "  " << label << ":";
            for (const auto& t : terms) {
                out << "  [";
                for (std::size_t i = 0; i < t.at("poly").size(); ++i) {
                    const auto& p = t.at("poly")[i];
                    out << (i ? " + " : "") << "(" << cell(p.at("coeff")) << ")m^" << json_tuple(p.at("exps"));
                }
                out << "] * " << json_tuple(t.at("base")) << "^m";
            }
            out << '\n';
        }
        out << "\nannihilators:\n";
        for (const auto& v : a.at("annihilators")) {
            out << "  P_" << v.at("variable") << " = " << cell(v.at("P")) << "   (orbit size " << v.at("orbit_size") << ")\n";
            for (const auto& f : v.at("factors")) {
                out << "    P_" << v.at("variable") << "," << f.at("ell") << " = " << cell(f.at("P")) << '\n';
            }
        }
        const auto& c = a.at("coprimality");
        out << "  ideal pairs checked: " << c.at("pairs_checked") << ", all coprime: "
            << (c.at("all_coprime").get<bool>() ? "yes" : "NO") << ", CRT dimension identity: "
            << (c.at("crt_dimension_identity").get<bool>() ? "yes" : "NO") << '\n';
    }

    if (m.contains("characters")) {
        const auto& ch = m.at("characters");
        const auto cols = degree_columns(ch.at("truncation"));
        out << "\ncharacters (truncation " << json_tuple(ch.at("truncation")) << "):\n";
        out << "  ch V(phi) = " << cell(ch.at("phi_character").at("text")) << '\n';
        out << "  ch V(psi) = " << cell(ch.at("total").at("text")) << '\n';
        out << "  joint eigenspace dimensions by k:\n";
        std::vector<std::pair<std::string, ordered_json>> rows;
        std::map<std::string, ordered_json> by_k;
        for (const auto& c : ch.at("components")) {
            rows.emplace_back("k=" + json_tuple(c.at("k")), c.at("series"));
            by_k[c.at("k").dump()] = c.at("series");
        }
        rows.emplace_back("total", ch.at("total"));
        render_dimension_rows(out, cols, rows);
        for (const auto& t : ch.at("loop_tables")) {
            out << "\n  loop component j = " << json_tuple(t.at("shift")) << " over loop degrees in [-" << t.at("loop_box")
                << ", " << t.at("loop_box") << "]^n:\n";
            std::vector<std::pair<std::string, ordered_json>> loop_rows;
            for (const auto& row : t.at("rows")) {
                auto it = by_k.find(row.at("eigenindex").dump());
                if (it == by_k.end()) continue;
                loop_rows.emplace_back("m=" + json_tuple(row.at("loop_degree")) + " k=" + json_tuple(row.at("eigenindex")),
                                       it->second);
            }
            render_dimension_rows(out, cols, loop_rows);
        }
    }

    if (m.contains("verification")) {
        out << "\nchecks:\n";
        for (const auto& c : m.at("verification").at("checks")) {
            out << "  [" << (c.at("passed").get<bool>() ? "PASS" : "FAIL") << "] " << cell(c.at("name"));
            if (c.contains("box")) out << "  (box " << c.at("box") << ")";
            if (c.contains("detail")) out << "  " << cell(c.at("detail")) << " at " << json_tuple(c.at("witness"));
            out << '\n';
        }
        out << "  overall: " << (m.at("verification").at("all_passed").get<bool>() ? "PASS" : "FAIL") << '\n';
    }
    return out.str();
}

}  // namespace loopchar
