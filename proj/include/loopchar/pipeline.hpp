#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "loopchar/runspec.hpp"

namespace loopchar {

enum class Mode { Analyze, Characters, Verify, All };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct PipelineOptions {
    Mode mode = Mode::All;
    // Re-embed into the smallest sufficient field instead of failing with
    // ConductorTooSmall.
    bool extend_conductor = false;
    std::int64_t loop_box = 1;
    std::uint64_t seed = 0;
};

struct RunManifest {
    nlohmann::ordered_json document;
    // False iff a verification check failed (verify/all modes only).
    bool all_checks_passed = true;
};

RunManifest run_pipeline(const RunSpec& spec, const PipelineOptions& options);

/// JSON encoding of a dimension series: {"text", "terms": [{"degree", "dim"}]}.
/// Integral coefficients become JSON integers when they fit, otherwise "p/q" strings.
nlohmann::ordered_json series_to_json(const GradedSeries& s);

/// Aligned plain-text rendering of a manifest.
std::string render_table(const nlohmann::ordered_json& manifest);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace loopchar
