#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "loopchar/error.hpp"
#include "loopchar/pipeline.hpp"
#include "loopchar/runspec.hpp"
#include "loopchar/selftest.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw loopchar::Error(loopchar::ErrorKind::ParseError, "cannot read input file '" + path + "'", "check the --in path");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw loopchar::Error(loopchar::ErrorKind::ParseError, "cannot write output file '" + path + "'", "check the --out path");
    out << text;
}

void report(const loopchar::Error& e) {
    std::cerr << "error: " << loopchar::to_string(e.kind()) << ": " << e.what() << '\n';
    if (!e.hint().empty()) std::cerr << "hint: " << e.hint() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characters of twisted loop modules from exp-polynomial highest weights"};
    app.set_version_flag("--version", std::string("loopchar ") + loopchar::kVersion);
    app.require_subcommand(1);

    std::string in_path;
    std::string out_path;
    std::string format = "json";
    std::int64_t loop_box = 1;
    std::uint64_t seed = 0;
    bool extend_conductor = false;

    for (const char* verb : {"analyze", "characters", "verify", "all"}) {
        auto* sub = app.add_subcommand(verb, std::string("run the pipeline in ") + verb + " mode");
        sub->add_option("--in", in_path, "input JSON (default: stdin)");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--loop-box", loop_box, "loop degree window [-b, b]^n for component tables")->check(CLI::Range(0, 50));
        sub->add_option("--seed", seed, "recorded in the manifest");
        sub->add_flag("--extend-conductor", extend_conductor,
                      "embed into the smallest sufficient cyclotomic field instead of failing");
    }

    loopchar::selftest::BatteryOptions battery;
    auto* self = app.add_subcommand("selftest", "randomized oracle-equivalence battery");
    self->add_option("--seed", battery.seed, "random seed");
    self->add_option("--tables", battery.single_stage_tables, "random tables for the single-stage check");
    self->add_option("--nested-tables", battery.nested_random_tables, "random 2-graded tables per order vector");
    self->add_option("--data", battery.random_specs, "random exp-polynomial data");
    self->add_option("--minimality-data", battery.minimality_specs, "data used for the minimality spot-check");
    self->add_option("--box", battery.box, "sampling box")->check(CLI::Range(1, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? loopchar::kExitOk : loopchar::kExitValidation;
    }

    try {
        if (self->parsed()) {
            bool ok = true;
            for (const auto& r : loopchar::selftest::run_all(battery)) {
                ok = ok && r.passed;
                std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.name << std::right
                          << std::setw(7) << r.instances << " instances  " << std::fixed << std::setprecision(2) << r.seconds << " s";
                if (!r.passed) std::cout << "  " << r.detail;
                std::cout << '\n';
            }
            return ok ? loopchar::kExitOk : loopchar::kExitVerification;
        }

        loopchar::PipelineOptions options;
        options.mode = loopchar::parse_mode(app.get_subcommands().front()->get_name());
        options.extend_conductor = extend_conductor;
        options.loop_box = loop_box;
        options.seed = seed;

        const loopchar::RunSpec spec = loopchar::parse_run_spec(read_input(in_path));
        const loopchar::RunManifest manifest = loopchar::run_pipeline(spec, options);
        write_output(out_path, format == "table" ? loopchar::render_table(manifest.document) : manifest.document.dump(2) + "\n");
        return manifest.all_checks_passed ? loopchar::kExitOk : loopchar::kExitVerification;
    } catch (const loopchar::Error& e) {
        report(e);
        return loopchar::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return loopchar::kExitValidation;
    }
}
