#include "dfa/cli.hpp"

#include "dfa/analyses.hpp"
#include "dfa/augmented.hpp"
#include "dfa/fuzz.hpp"
#include "dfa/interp.hpp"
#include "dfa/optimizer.hpp"
#include "dfa/parser.hpp"
#include "dfa/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace dfa {

namespace {

struct Style {
    bool color = false;

    std::string wrap(const std::string& text, const char* code) const
    {
        return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
    }
    std::string label(const std::string& text) const { return wrap(text, "1"); }
    std::string good(const std::string& text) const { return wrap(text, "32"); }
    std::string bad(const std::string& text) const { return wrap(text, "31"); }
};

/// Reads and parses a program, reporting problems on err.
std::optional<Program> load(const std::string& path, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot open " << path << '\n';
        return std::nullopt;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParseResult r = parse(buffer.str());
    if (!r.ok()) {
        for (const auto& e : r.errors)
            err << formatError(e, path) << '\n';
        return std::nullopt;
    }
    return std::move(*r.program);
}

std::optional<AnalysisKind> kindArg(const std::string& name, std::ostream& err)
{
    auto kind = parseAnalysisKind(name);
    if (!kind)
        err << "error: unknown analysis '" << name << "' (expected lv, vbe, dv or rd)\n";
    return kind;
}

bool jsonFormat(const std::string& format) { return format == "json"; }

void printFacts(const Program& program, const AnalysisResult& result, const Style& style, std::ostream& out)
{
    for (std::size_t i = 0; i < program.size(); ++i) {
        const std::string name = style.label(program.label(i).name);
        const Fact& before = result.before[i];
        const Fact& after = result.after[i];
        if (before.universe()->kind() != Universe::Kind::Definitions) {
            out << name << ": before=" << before.toString() << " after=" << after.toString() << '\n';
            continue;
        }
        out << name << ":\n  before:\n";
        for (const auto& line : before.toLines())
            out << "    " << line << '\n';
        out << "  after:\n";
        for (const auto& line : after.toLines())
            out << "    " << line << '\n';
    }
}

int cmdParse(const std::string& file, std::ostream& out, std::ostream& err)
{
    auto program = load(file, err);
    if (!program)
        return ExitUsage;
    out << print(*program);
    return ExitSuccess;
}

int cmdRun(const std::string& file, std::size_t maxSteps, bool showTrace, const std::string& format,
           std::ostream& out, std::ostream& err)
{
    auto program = load(file, err);
    if (!program)
        return ExitUsage;
    Trace trace = run(*program, maxSteps);
    if (jsonFormat(format)) {
        if (!showTrace)
            trace.configs.erase(trace.configs.begin(), trace.configs.end() - 1);
        out << traceToJson(trace);
    } else if (showTrace) {
        out << traceToText(trace);
    } else {
        out << outcomeMessage(trace) << '\n' << "final state: " << toString(trace.finalState()) << '\n';
    }
    switch (trace.outcome) {
    case Outcome::Done:
        return ExitSuccess;
    case Outcome::Stuck:
    case Outcome::Overflow:
        return ExitStuck;
    case Outcome::BudgetExhausted:
        return ExitBudget;
    }
    return ExitSuccess;
}

int cmdAnalyze(const std::string& file, const std::string& analysis, const std::vector<std::string>& observe,
               const std::string& format, const Style& style, std::ostream& out, std::ostream& err)
{
    auto kind = kindArg(analysis, err);
    if (!kind)
        return ExitUsage;
    if (!observe.empty() && *kind != AnalysisKind::LiveVariables) {
        err << "error: --observe is only accepted with --analysis lv\n";
        return ExitUsage;
    }
    auto program = load(file, err);
    if (!program)
        return ExitUsage;
    AnalysisResult result = analyze(*kind, *program, {observe.begin(), observe.end()});
    if (*kind == AnalysisKind::DefinedVariables) {
        auto unreachable = unreachableLabels(*program);
        if (!unreachable.empty()) {
            err << "note: unreachable labels are reported as defining every variable:";
            for (const auto& l : unreachable)
                err << ' ' << l.name;
            err << '\n';
        }
    }
    if (jsonFormat(format))
        out << analysisToJson(file, *kind, result);
    else
        printFacts(*program, result, style, out);
    return ExitSuccess;
}

int cmdCheck(const std::string& file, const std::string& analysis, bool metarule, std::size_t maxSteps,
             const std::string& format, const Style& style, std::ostream& out, std::ostream& err)
{
    auto kind = kindArg(analysis, err);
    if (!kind)
        return ExitUsage;
    auto program = load(file, err);
    if (!program)
        return ExitUsage;
    const AnalysisSpec spec = makeSpec(*kind, *program);
    const AnalysisResult result = solve(*program, spec);

    CheckReport report;
    for (const auto& v : audit(*program, spec, result))
        report.failures.push_back({0, v.label, "equation", "the " + toString(v.side) + " equation does not hold",
                                   v.expected.atoms(), v.actual.atoms()});
    if (*kind == AnalysisKind::LiveVariables)
        for (const auto& l : liveReadViolations(*program, result))
            report.failures.push_back({0, l, "live-read-lemma", "a variable read here is not live before it", {}, {}});
    if (*kind == AnalysisKind::VeryBusy)
        for (const auto& v : vbeKillViolations(*program, result))
            report.failures.push_back(
                {0, v.label, "vbe-kill-lemma", toString(v.expression) + " is busy before an assignment that kills it", {}, {}});
    const Trace trace = run(*program, maxSteps);
    report.merge(checkProgress(*kind, *program, result, trace, metarule));
    report.merge(checkTraceTheorems(*kind, *program, result, trace));

    if (jsonFormat(format)) {
        out << checkReportToJson(report);
    } else {
        std::string text = report.toText();
        const std::string head = report.passed() ? "PASS" : "FAIL";
        text.replace(0, head.size(), report.passed() ? style.good(head) : style.bad(head));
        out << text;
    }
    return report.passed() ? ExitSuccess : ExitCheckFailed;
}

int cmdOpt(const std::string& file, const std::string& pass, const std::vector<std::string>& observe,
           const std::string& output, const std::string& format, std::ostream& out, std::ostream& err)
{
    if (pass != "dce" && pass != "constprop") {
        err << "error: unknown pass '" << pass << "' (expected dce or constprop)\n";
        return ExitUsage;
    }
    if (!observe.empty() && pass != "dce") {
        err << "error: --observe is only accepted with --pass dce\n";
        return ExitUsage;
    }
    auto program = load(file, err);
    if (!program)
        return ExitUsage;
    const auto programVars = variables(*program);
    for (const auto& v : observe)
        if (!programVars.contains(v)) {
            err << "error: observed variable " << v << " does not occur in the program\n";
            return ExitUsage;
        }
    OptimizationResult result =
        pass == "dce" ? deadStoreElim(*program, {observe.begin(), observe.end()}) : constProp(*program);
    const std::string printed = print(result.program);
    if (!output.empty()) {
        std::ofstream o(output, std::ios::binary);
        if (!o) {
            err << "error: cannot write " << output << '\n';
            return ExitUsage;
        }
        o << printed;
    }
    if (jsonFormat(format)) {
        out << rewriteLogToJson(result.log, result.program);
        return ExitSuccess;
    }
    if (output.empty())
        out << printed;
    // Keep stdout a valid program by emitting the log as comments.
    std::istringstream log(result.log.toText());
    for (std::string line; std::getline(log, line);)
        out << "# " << line << '\n';
    return ExitSuccess;
}

int cmdFuzz(std::uint64_t seed, std::size_t count, int maxCommands, std::size_t maxSteps, const std::string& format,
            std::ostream& out)
{
    GenConfig config;
    config.seed = seed;
    config.maxCommands = maxCommands;
    SuiteOptions options;
    options.maxSteps = maxSteps;
    SuiteReport report = runSuite(generateCorpus(config, count), options);
    if (jsonFormat(format))
        out << suiteReportToJson(report);
    else
        out << report.toTable();
    return report.passed() ? ExitSuccess : ExitCheckFailed;
}

} // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color)
{
    CLI::App app{"Dataflow analysis workbench for a small imperative language", "dfa"};
    app.require_subcommand(1);
    Style style{color};

    std::string file;
    std::string analysis;
    std::string format = "text";
    std::string pass;
    std::string output;
    std::vector<std::string> observe;
    std::size_t maxSteps = defaultMaxSteps;
    std::size_t fuzzSteps = 10000;
    bool showTrace = false;
    bool metarule = false;
    std::uint64_t seed = 0;
    std::size_t count = 100;
    int maxCommands = 20;

    auto formatOption = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* parseCmd = app.add_subcommand("parse", "Validate a program and print its canonical form");
    parseCmd->add_option("file", file, "Program (.imp)")->required();

    auto* runCmd = app.add_subcommand("run", "Execute a program");
    runCmd->add_option("file", file, "Program (.imp)")->required();
    runCmd->add_option("--max-steps", maxSteps, "Transition budget")->check(CLI::PositiveNumber);
    runCmd->add_flag("--trace", showTrace, "Print every configuration");
    formatOption(runCmd);

    auto* analyzeCmd = app.add_subcommand("analyze", "Print before/after facts for every label");
    analyzeCmd->add_option("file", file, "Program (.imp)")->required();
    analyzeCmd->add_option("--analysis", analysis, "lv, vbe, dv or rd")->required();
    analyzeCmd->add_option("--observe", observe, "Variables live at exit (lv only)")->delimiter(',');
    formatOption(analyzeCmd);

    auto* checkCmd = app.add_subcommand("check", "Audit equations, Progress and trace theorems");
    checkCmd->add_option("file", file, "Program (.imp)")->required();
    checkCmd->add_option("--analysis", analysis, "lv, vbe, dv or rd")->required();
    checkCmd->add_flag("--metarule", metarule, "Enable the downward closure metarule for lv/vbe");
    checkCmd->add_option("--max-steps", maxSteps, "Transition budget")->check(CLI::PositiveNumber);
    formatOption(checkCmd);

    auto* optCmd = app.add_subcommand("opt", "Apply dead-store elimination or constant propagation");
    optCmd->add_option("file", file, "Program (.imp)")->required();
    optCmd->add_option("--pass", pass, "dce or constprop")->required();
    optCmd->add_option("--observe", observe, "Variables observed at exit (dce only)")->delimiter(',');
    optCmd->add_option("-o,--output", output, "Write the transformed program here");
    formatOption(optCmd);

    auto* fuzzCmd = app.add_subcommand("fuzz", "Run the property suite over generated programs");
    fuzzCmd->add_option("--seed", seed, "Seed of the first program");
    fuzzCmd->add_option("--count", count, "Number of programs");
    fuzzCmd->add_option("--max-cmds", maxCommands, "Maximum body commands per program")->check(CLI::NonNegativeNumber);
    fuzzCmd->add_option("--max-steps", fuzzSteps, "Transition budget per run")->check(CLI::PositiveNumber);
    formatOption(fuzzCmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run 'dfa --help' for usage\n";
        return ExitUsage;
    }

    try {
        if (parseCmd->parsed())
            return cmdParse(file, out, err);
        if (runCmd->parsed())
            return cmdRun(file, maxSteps, showTrace, format, out, err);
        if (analyzeCmd->parsed())
            return cmdAnalyze(file, analysis, observe, format, style, out, err);
        if (checkCmd->parsed())
            return cmdCheck(file, analysis, metarule, maxSteps, format, style, out, err);
        if (optCmd->parsed())
            return cmdOpt(file, pass, observe, output, format, out, err);
        if (fuzzCmd->parsed())
            return cmdFuzz(seed, count, maxCommands, fuzzSteps, format, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitUsage;
    }
    return ExitUsage;
}

} // namespace dfa
