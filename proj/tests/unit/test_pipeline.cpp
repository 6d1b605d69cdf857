#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <iterator>

#include "loopchar/error.hpp"
#include "loopchar/pipeline.hpp"
#include "loopchar/runspec.hpp"

using namespace loopchar;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(LOOPCHAR_TEST_DATA) + "/" + name, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::ordered_json without_timing(nlohmann::ordered_json doc) {
    doc.erase("timing");
    return doc;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("worked instance") {
    const RunSpec spec = parse_run_spec(slurp("worked_example.json"));
    const RunManifest m = run_pipeline(spec, {});
    const auto& d = m.document;
    CHECK(m.all_checks_passed);
    CHECK(d["lattice"]["r"] == nlohmann::json::array({2}));
    CHECK(d["lattice"]["R"] == 2);
    CHECK(d["analysis"]["annihilators"][0]["P"] == "t1^2 - 4");
    CHECK(d["analysis"]["phi"]["h1"][0]["base"][0] == "-2");
    CHECK(d["characters"]["total"]["text"] == "1 + 2*X + X^2");
    CHECK(d["characters"]["components"][0]["series"]["text"] == "1 + X + X^2");
    CHECK(d["characters"]["components"][1]["series"]["text"] == "X");
    CHECK(d["verification"]["all_passed"] == true);
    CHECK(d["input_hash"].get<std::string>().rfind("sha256:", 0) == 0);
}

TEST_CASE("modes select sections") {
    const RunSpec spec = parse_run_spec(slurp("worked_example.json"));
    PipelineOptions o;
    o.mode = Mode::Analyze;
    auto d = run_pipeline(spec, o).document;
    CHECK(d.contains("analysis"));
    CHECK_FALSE(d.contains("characters"));
    CHECK_FALSE(d.contains("verification"));
    o.mode = Mode::Characters;
    d = run_pipeline(spec, o).document;
    CHECK(d.contains("characters"));
    CHECK_FALSE(d.contains("analysis"));
    o.mode = Mode::Verify;
    d = run_pipeline(spec, o).document;
    CHECK(d.contains("verification"));
    CHECK(parse_mode("verify") == Mode::Verify);
    CHECK_THROWS_AS(parse_mode("nope"), Error);
}

TEST_CASE("determinism") {
    const std::string text = slurp("worked_example.json");
    const auto a = without_timing(run_pipeline(parse_run_spec(text), {}).document);
    const auto b = without_timing(run_pipeline(parse_run_spec(text), {}).document);
    CHECK(a.dump() == b.dump());
    CHECK(render_table(a) == render_table(b));
}

TEST_CASE("conductor too small") {
    const RunSpec spec = parse_run_spec(slurp("conductor_too_small.json"));
    try {
        run_pipeline(spec, {});
        FAIL("expected ConductorTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConductorTooSmall);
        CHECK(e.suggested_conductor == 6);
        CHECK(exit_code(e.kind()) == kExitValidation);
    }
    PipelineOptions o;
    o.extend_conductor = true;
    const RunManifest m = run_pipeline(spec, o);
    CHECK(m.all_checks_passed);
    CHECK(m.document["conductor"]["used"] == 6);
    CHECK(m.document["lattice"]["r"] == nlohmann::json::array({2, 3}));
}

TEST_CASE("trivial datum") {
    CHECK(kind_of([] { parse_run_spec(slurp("zero_psi.json")); }) == ErrorKind::ParseError);
}

TEST_CASE("malformed input") {
    CHECK(kind_of([] { parse_run_spec("{"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_run_spec(R"({"n": 1})"); }) == ErrorKind::ParseError);
    std::string bad = slurp("worked_example.json");
    bad.replace(bad.find("\"2\""), 3, "\"zeta(0)\"");
    CHECK(kind_of([&] { parse_run_spec(bad); }) == ErrorKind::ParseError);
}

TEST_CASE("budget exhaustion") {
    std::string text = slurp("worked_example.json");
    text.replace(text.find("10000000"), 8, "1");
    const RunSpec spec = parse_run_spec(text);
    PipelineOptions o;
    o.mode = Mode::Verify;
    CHECK(kind_of([&] { run_pipeline(spec, o); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("product-form characters and requested components") {
    std::string text = slurp("worked_example.json");
    const auto at = text.find("\"phi_character\"");
    const auto end = text.find("\n", at);
    text.replace(at, end - at, R"("phi_character": {"product": [{"degree": [1], "mult": 1}]},)");
    text.replace(text.find("\"all\""), 5, "[[1]]");
    const RunSpec spec = parse_run_spec(text);
    const auto d = run_pipeline(spec, {}).document;
    CHECK(d["characters"]["phi_character"]["text"] == "1 + X + X^2 + X^3 + X^4");
    REQUIRE(d["characters"]["components"].size() == 1);
    CHECK(d["characters"]["components"][0]["k"] == nlohmann::json::array({1}));
    CHECK(d["verification"]["all_passed"] == true);
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
