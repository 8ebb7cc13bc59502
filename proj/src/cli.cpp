#include "urep/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "urep/artifact.hpp"
#include "urep/parser.hpp"

namespace urep {

namespace {

struct CompileFlags {
    std::string set;
    int delta = 0;
    std::string expr;
    std::string input;
    std::string form = "both";
    std::string out;
    std::string emit = "json";
    std::string window_exponent = "standard";
    std::string digit_shift = "sign-aware";
    bool stats = false;
};

struct VerifyFlags {
    std::string artifact;
    unsigned a_max = 50;
    unsigned h_bound = 25;
    unsigned bc_samples = 64;
    std::string naive_cap = "1000000";
    int jobs = 0;
    std::uint64_t seed = SuiteConfig{}.seed;
    bool verbose = false;
    std::string out;
};

struct ReportFlags {
    std::vector<std::string> artifacts;
    std::string format = "text";
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ArtifactError("cannot write '" + path + "'");
    file << content;
}

InputSpec resolve_input(const CompileFlags& flags) {
    if (!flags.input.empty()) {
        std::ifstream in(flags.input);
        if (!in) throw ArtifactError("cannot open input '" + flags.input + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ArtifactError("'" + flags.input + "' is not JSON: " + e.what());
        }
        return input_from_json(j);
    }
    if (flags.set.empty()) throw ArtifactError("compile needs --set NAME [--delta D --expr TEXT] or --input FILE");
    const auto bundled = find_bundled(flags.set);
    if (flags.expr.empty()) {
        if (!bundled) throw ArtifactError("'" + flags.set + "' is not a bundled set; give --delta and --expr");
        return {bundled->name, bundled->delta, bundled->expression};
    }
    const int delta = flags.delta > 0 ? flags.delta : bundled ? bundled->delta : 1;
    return {flags.set, delta, flags.expr};
}

int command_compile(const CompileFlags& flags, std::ostream& out) {
    FormOneOptions options;
    options.window_exponent =
        flags.window_exponent == "lowered" ? WindowExponent::lowered : WindowExponent::standard;
    options.digit_shift = flags.digit_shift == "always-offset" ? DigitShift::always_offset : DigitShift::sign_aware;
    const FormSelection forms =
        flags.form == "1" ? FormSelection::one : flags.form == "2" ? FormSelection::two : FormSelection::both;

    const auto artifact = compile_artifact(resolve_input(flags), forms, options);
    std::string content;
    if (flags.emit == "latex") {
        content = artifact_latex(artifact);
    } else if (flags.emit == "text") {
        content = artifact_text(artifact);
    } else {
        content = artifact_dump(artifact);
    }
    write_output(flags.out, content, out);
    if (flags.stats) out << growth_text({growth_row(artifact.set)});
    return kExitOk;
}

int command_verify(const VerifyFlags& flags, std::ostream& out) {
    const auto artifact = load_artifact(flags.artifact);
    SuiteConfig config;
    config.a_max = flags.a_max;
    config.h_bound = flags.h_bound;
    config.bc_samples = flags.bc_samples;
    if (config.naive_cap.set_str(flags.naive_cap, 10) != 0 || sgn(config.naive_cap) <= 0)
        throw ArtifactError("--naive-cap must be a positive integer");
    config.jobs = flags.jobs;
    config.seed = flags.seed;
    const auto report = run_equivalence_suite(artifact.set, config);
    if (flags.out.empty()) {
        out << report_text(report, flags.verbose);
    } else {
        write_output(flags.out, report_json(report).dump(2) + "\n", out);
        out << (report.passed() ? "PASS" : "FAIL") << '\n';
    }
    return report.passed() ? kExitOk : kExitVerificationFailed;
}

int command_report(const ReportFlags& flags, std::ostream& out) {
    std::vector<CompiledSet> sets;
    for (const auto& path : flags.artifacts) sets.push_back(load_artifact(path).set);
    const auto rows = growth_report(sets);
    if (flags.format == "csv") {
        out << growth_csv(rows);
    } else if (flags.format == "json") {
        out << growth_json(rows).dump(2) << '\n';
    } else {
        out << growth_text(rows);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile Diophantine representations into bounded-quantifier forms and verify them", "urep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CompileFlags compile;
    auto* compile_cmd = app.add_subcommand("compile", "Compile a representation into forms 1 and 2");
    compile_cmd->add_option("--set", compile.set, "Set name (a bundled name alone selects its expression)");
    compile_cmd->add_option("--delta", compile.delta, "Number of unknowns h1..h<delta>")->check(CLI::PositiveNumber);
    compile_cmd->add_option("--expr", compile.expr, "Polynomial R(a, h1, ..., h<delta>)");
    compile_cmd->add_option("--input", compile.input, "JSON file with set_name, delta, expression");
    compile_cmd->add_option("--form", compile.form, "Forms to emit")->check(CLI::IsMember({"1", "2", "both"}));
    compile_cmd->add_option("--out", compile.out, "Output file (default: standard output)");
    compile_cmd->add_option("--emit", compile.emit, "Output format")->check(CLI::IsMember({"json", "latex", "text"}));
    compile_cmd->add_option("--window-exponent", compile.window_exponent, "Digit-window divisor exponent")
        ->check(CLI::IsMember({"standard", "lowered"}));
    compile_cmd->add_option("--digit-shift", compile.digit_shift, "Digit-test shift of z")
        ->check(CLI::IsMember({"sign-aware", "always-offset"}));
    compile_cmd->add_flag("--stats", compile.stats, "Print degree and coefficient statistics");

    VerifyFlags verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the equivalence suite on a compiled artifact");
    verify_cmd->add_option("--artifact", verify.artifact, "Artifact JSON")->required();
    verify_cmd->add_option("--a-max", verify.a_max, "Largest a checked");
    verify_cmd->add_option("--h-bound", verify.h_bound, "Bound on witness entries for the oracle");
    verify_cmd->add_option("--bc-samples", verify.bc_samples, "Random (b, c) per a");
    verify_cmd->add_option("--naive-cap", verify.naive_cap, "Largest F enumerated by the naive evaluator");
    verify_cmd->add_option("--jobs", verify.jobs, "Threads (0: all)");
    verify_cmd->add_option("--seed", verify.seed, "Sampling seed");
    verify_cmd->add_flag("--verbose", verify.verbose, "List every counterexample");
    verify_cmd->add_option("--out", verify.out, "Write the JSON report here");

    ReportFlags report;
    auto* report_cmd = app.add_subcommand("report", "Growth table for compiled artifacts");
    report_cmd->add_option("--artifact", report.artifacts, "Artifact JSON files");
    report_cmd->add_option("--format", report.format, "Table format")->check(CLI::IsMember({"text", "csv", "json"}));

    std::vector<const char*> argv{"urep"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compile_cmd->parsed()) return command_compile(compile, out);
        if (verify_cmd->parsed()) return command_verify(verify, out);
        return command_report(report, out);
    } catch (const ParseError& e) {
        err << e.what() << '\n';
    } catch (const EncodingError& e) {
        err << e.what() << '\n';
    } catch (const ArtifactError& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace urep
