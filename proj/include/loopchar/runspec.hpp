#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loopchar/charseries.hpp"
#include "loopchar/exppoly.hpp"

namespace loopchar {

/// A parsed input document.
///
/// Literals are parsed in Q(zeta_M) with M = lcm(declared conductor, every
/// zeta(q) order that appears), so an undersized declaration is still
/// readable and can be reported with the conductor it actually needs.
struct RunSpec {
    std::int64_t declared_conductor = 1;
    std::int64_t literal_conductor = 1;
    PsiSpec psi;
    std::vector<int> truncation;
    GradedSeries phi_character{std::vector<int>{}};
    nlohmann::ordered_json phi_character_input;
    std::int64_t box = 8;
    std::uint64_t budget = 10'000'000;
    std::optional<std::vector<IntVector>> components;  // nullopt: all of Gamma-bar
    std::string input_hash;
};

/// Parses and validates the JSON input. Throws Error(ParseError) with the
/// offending JSON path in the message.
RunSpec parse_run_spec(std::string_view json_text);

/// "sha256:<hex>" of the raw bytes.
std::string sha256_hex(std::string_view bytes);

/// Terms of an exp-polynomial in the input schema ({"base", "poly"} objects).
nlohmann::ordered_json exppoly_to_json(const ExpPoly& f);

}  // namespace loopchar
