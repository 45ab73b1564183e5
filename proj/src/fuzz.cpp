#include "dfa/fuzz.hpp"

#include "dfa/augmented.hpp"
#include "dfa/optimizer.hpp"
#include "dfa/parser.hpp"

#include <cstdio>
#include <random>
#include <sstream>

namespace dfa {

void GenConfig::check() const
{
    if (maxCommands < 0)
        throw Error("invalid-config", "maxCommands must not be negative");
    if (maxVars <= 0)
        throw Error("invalid-config", "maxVars must be positive");
    if (maxExprDepth < 0)
        throw Error("invalid-config", "maxExprDepth must not be negative");
    if (literalMin > literalMax)
        throw Error("invalid-config", "literal range is empty");
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(branchProb) || !probability(gotoProb) || branchProb + gotoProb > 1.0)
        throw Error("invalid-config", "branch and goto probabilities must lie in [0, 1] and sum to at most 1");
}

namespace {

std::string variableName(int i)
{
    static const char* const names[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    if (i < 8)
        return names[i];
    return "v" + std::to_string(i);
}

class Generator {
public:
    explicit Generator(const GenConfig& config) : config_(config), rng_(config.seed)
    {
        for (int i = 0; i < config.maxVars; ++i)
            names_.push_back(variableName(i));
    }

    Program program()
    {
        const int body = static_cast<int>(uniform(0, config_.maxCommands));
        const int total = body + 2;
        std::vector<LabeledCommand> commands;
        for (int i = 0; i < body; ++i) {
            const double r = unit();
            Command c;
            if (r < config_.branchProb) {
                c = Branch{boolean(config_.maxExprDepth), label(uniform(0, total - 1))};
            } else if (r < config_.branchProb + config_.gotoProb) {
                const auto target = chance(0.7) ? uniform(i + 1, total - 1) : uniform(0, total - 1);
                c = Goto{label(target)};
            } else if (chance(0.05)) {
                c = Skip{};
            } else {
                std::string v = names_[uniform(0, static_cast<std::int64_t>(names_.size()) - 1)];
                c = Assign{v, arith(config_.maxExprDepth)};
                assigned_.push_back(std::move(v));
            }
            commands.push_back({label(i), std::move(c)});
        }
        commands.push_back({label(body), Halt{}});
        commands.push_back({label(body + 1), Done{}});
        return Program(std::move(commands));
    }

private:
    static Label label(std::int64_t i) { return Label{"l" + std::to_string(i)}; }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    bool chance(double p) { return unit() < p; }

    AExp variable()
    {
        // Bias reads towards variables that already have an assignment earlier
        // in the listing. A few undefined reads are kept so stuck runs occur.
        if (assigned_.empty()) {
            if (chance(0.85))
                return AExp::literal(uniform(config_.literalMin, config_.literalMax));
        } else if (chance(0.9)) {
            return AExp::variable(assigned_[uniform(0, static_cast<std::int64_t>(assigned_.size()) - 1)]);
        }
        return AExp::variable(names_[uniform(0, static_cast<std::int64_t>(names_.size()) - 1)]);
    }

    AExp arith(int depth)
    {
        if (depth == 0 || chance(0.4)) {
            if (chance(0.4))
                return AExp::literal(uniform(config_.literalMin, config_.literalMax));
            return variable();
        }
        static const ArithOp ops[] = {ArithOp::Plus, ArithOp::Minus, ArithOp::Times};
        const ArithOp op = ops[uniform(0, 2)];
        AExp l = arith(depth - 1);
        AExp r = arith(depth - 1);
        return AExp::binary(op, std::move(l), std::move(r));
    }

    BExp comparison()
    {
        const CompareOp op = chance(0.5) ? CompareOp::Eq : CompareOp::Leq;
        const int depth = config_.maxExprDepth > 0 ? config_.maxExprDepth - 1 : 0;
        AExp l = arith(depth);
        AExp r = arith(depth);
        return BExp::compare(op, std::move(l), std::move(r));
    }

    BExp boolean(int depth)
    {
        if (depth == 0)
            return comparison();
        const double r = unit();
        if (r < 0.6)
            return comparison();
        if (r < 0.7)
            return BExp::negation(boolean(depth - 1));
        if (r < 0.8) {
            BExp a = boolean(depth - 1);
            BExp b = boolean(depth - 1);
            return BExp::conjunction(std::move(a), std::move(b));
        }
        if (r < 0.9) {
            BExp a = boolean(depth - 1);
            BExp b = boolean(depth - 1);
            return BExp::disjunction(std::move(a), std::move(b));
        }
        return BExp::truth(chance(0.5));
    }

    const GenConfig& config_;
    std::mt19937_64 rng_;
    std::vector<std::string> names_;
    std::vector<std::string> assigned_;
};

} // namespace

Program generate(const GenConfig& config)
{
    config.check();
    return Generator(config).program();
}

std::vector<Program> generateCorpus(GenConfig config, std::size_t count)
{
    std::vector<Program> out;
    out.reserve(count);
    const std::uint64_t base = config.seed;
    for (std::size_t i = 0; i < count; ++i) {
        config.seed = base + i;
        out.push_back(generate(config));
    }
    return out;
}

bool ProgramReport::passed() const
{
    for (const auto& c : checks)
        if (c.status == CheckOutcome::Status::Fail)
            return false;
    return true;
}

std::size_t SuiteReport::failingPrograms() const
{
    std::size_t n = 0;
    for (const auto& p : programs)
        n += p.passed() ? 0 : 1;
    return n;
}

namespace {

using Status = CheckOutcome::Status;

std::string firstLines(const CheckReport& report, std::size_t limit = 3)
{
    std::string out;
    for (std::size_t i = 0; i < report.failures.size() && i < limit; ++i)
        out += (i ? "; " : "") + report.failures[i].describe();
    if (report.failures.size() > limit)
        out += "; ... (" + std::to_string(report.failures.size()) + " failures)";
    return out;
}

CheckOutcome fromReport(std::string name, const CheckReport& report)
{
    return {std::move(name), report.passed() ? Status::Pass : Status::Fail, firstLines(report)};
}

CheckOutcome fromVerdict(std::string name, const DiffVerdict& v)
{
    switch (v.kind) {
    case DiffVerdict::Kind::Same:
        return {std::move(name), Status::Pass, {}};
    case DiffVerdict::Kind::Inconclusive:
        return {std::move(name), Status::Skip, v.detail};
    case DiffVerdict::Kind::Different:
        return {std::move(name), Status::Fail, v.detail};
    }
    return {std::move(name), Status::Fail, "unknown verdict"};
}

template <typename Fn>
CheckOutcome guarded(const std::string& name, Fn fn)
{
    try {
        return fn();
    } catch (const std::exception& e) {
        return {name, Status::Fail, std::string("exception: ") + e.what()};
    }
}

std::optional<std::string> lastAssignedVariable(const Program& program)
{
    std::optional<std::string> out;
    for (const auto& lc : program.commands())
        if (auto v = assignedVariable(lc.command))
            out = v;
    return out;
}

} // namespace

std::vector<CheckOutcome> checkProgram(const Program& program, std::size_t index, const SuiteOptions& options)
{
    std::vector<CheckOutcome> out;
    out.push_back(guarded("roundtrip", [&] {
        ParseResult r = parse(print(program));
        const bool ok = r.ok() && *r.program == program;
        return CheckOutcome{"roundtrip", ok ? Status::Pass : Status::Fail, ok ? "" : "parse(print(p)) differs"};
    }));

    const Trace trace = run(program, options.maxSteps);
    for (AnalysisKind kind : allAnalysisKinds) {
        const std::string k = shortName(kind);
        std::optional<AnalysisSpec> spec;
        std::optional<AnalysisResult> result;
        try {
            spec = makeSpec(kind, program);
            result = solve(program, *spec);
            if (options.tamper)
                options.tamper(index, kind, program, *result);
        } catch (const std::exception& e) {
            out.push_back({"solve-" + k, Status::Fail, e.what()});
            continue;
        }
        out.push_back(guarded("audit-" + k, [&] {
            auto violations = audit(program, *spec, *result);
            std::string detail;
            for (std::size_t i = 0; i < violations.size() && i < 3; ++i)
                detail += (i ? "; " : "") + violations[i].describe();
            return CheckOutcome{"audit-" + k, violations.empty() ? Status::Pass : Status::Fail, detail};
        }));
        if (kind == AnalysisKind::LiveVariables) {
            out.push_back(guarded("live-reads", [&] {
                auto bad = liveReadViolations(program, *result);
                std::string detail;
                for (const auto& l : bad)
                    detail += (detail.empty() ? "reads not live at " : ", ") + l.name;
                return CheckOutcome{"live-reads", bad.empty() ? Status::Pass : Status::Fail, detail};
            }));
        }
        if (kind == AnalysisKind::VeryBusy) {
            out.push_back(guarded("vbe-kill", [&] {
                auto bad = vbeKillViolations(program, *result);
                std::string detail;
                for (const auto& v : bad)
                    detail += (detail.empty() ? "" : ", ") + toString(v.expression) + " busy at " + v.label.name;
                return CheckOutcome{"vbe-kill", bad.empty() ? Status::Pass : Status::Fail, detail};
            }));
        }
        out.push_back(guarded("progress-" + k, [&] {
            return fromReport("progress-" + k, checkProgress(kind, program, *result, trace));
        }));
        out.push_back(guarded("trace-" + k, [&] {
            return fromReport("trace-" + k, checkTraceTheorems(kind, program, *result, trace));
        }));
        out.push_back(guarded("preservation-" + k, [&] {
            const Fact pi0 = initialHistory(kind, spec->universe).value_or(result->before[program.first()]);
            AugTrace aug = runAugmented(kind, program, pi0, analysisPolicy(*result), false, options.maxSteps);
            CheckReport report = checkPreservation(program, aug.configs);
            report.merge(checkAugmentedInvariants(kind, program, aug.configs));
            return fromReport("preservation-" + k, report);
        }));
    }

    const auto last = lastAssignedVariable(program);
    out.push_back(guarded("dce-observe-last", [&] {
        if (!last)
            return CheckOutcome{"dce-observe-last", Status::Skip, "no assignments"};
        const std::set<std::string> observe{*last};
        auto opt = deadStoreElim(program, observe);
        return fromVerdict("dce-observe-last", compareRuns(program, opt.program, options.maxSteps, observe));
    }));
    out.push_back(guarded("dce-observe-none", [&] {
        auto opt = deadStoreElim(program, {});
        return fromVerdict("dce-observe-none",
                           compareRuns(program, opt.program, options.maxSteps, std::set<std::string>{}));
    }));
    out.push_back(guarded("constprop", [&] {
        auto opt = constProp(program);
        return fromVerdict("constprop", compareRuns(program, opt.program, options.maxSteps, std::nullopt));
    }));
    out.push_back(guarded("idempotence", [&] {
        std::string detail;
        std::vector<std::set<std::string>> observes{{}};
        if (last)
            observes.push_back({*last});
        for (const auto& observe : observes) {
            auto once = deadStoreElim(program, observe);
            auto twice = deadStoreElim(once.program, observe);
            if (!twice.log.entries.empty())
                detail += "dead-store elimination rewrote its own output at " + twice.log.entries.front().label.name;
        }
        auto once = constProp(program);
        auto twice = constProp(once.program);
        if (!twice.log.entries.empty())
            detail += (detail.empty() ? "" : "; ") + std::string("constant propagation rewrote its own output at ") +
                      twice.log.entries.front().label.name;
        return CheckOutcome{"idempotence", detail.empty() ? Status::Pass : Status::Fail, detail};
    }));
    return out;
}

Program shrinkProgram(const Program& program, const std::function<bool(const Program&)>& fails)
{
    std::vector<LabeledCommand> commands = program.commands();
    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (isDone(commands[i].command) || std::holds_alternative<Skip>(commands[i].command))
            continue;
        std::vector<LabeledCommand> candidate = commands;
        candidate[i].command = Skip{};
        Program p(candidate);
        if (validate(p).empty() && fails(p))
            commands = std::move(candidate);
    }
    return Program(std::move(commands));
}

SuiteReport runSuite(const std::vector<Program>& programs, const SuiteOptions& options)
{
    SuiteReport report;
    for (std::size_t i = 0; i < programs.size(); ++i) {
        ProgramReport pr;
        pr.index = i;
        pr.source = print(programs[i]);
        pr.checks = checkProgram(programs[i], i, options);
        if (!pr.passed() && options.shrink) {
            std::set<std::string> failing;
            for (const auto& c : pr.checks)
                if (c.status == Status::Fail)
                    failing.insert(c.name);
            auto fails = [&](const Program& p) {
                for (const auto& c : checkProgram(p, i, options))
                    if (c.status == Status::Fail && failing.contains(c.name))
                        return true;
                return false;
            };
            pr.shrunk = print(shrinkProgram(programs[i], fails));
        }
        for (const auto& c : pr.checks) {
            bool known = false;
            for (const auto& n : report.checkNames)
                known = known || n == c.name;
            if (!known)
                report.checkNames.push_back(c.name);
        }
        report.programs.push_back(std::move(pr));
    }
    return report;
}

std::string SuiteReport::toTable() const
{
    std::ostringstream os;
    char line[128];
    std::snprintf(line, sizeof line, "%-20s %6s %6s %6s\n", "check", "pass", "fail", "skip");
    os << line;
    for (const auto& name : checkNames) {
        std::size_t counts[3] = {0, 0, 0};
        for (const auto& p : programs)
            for (const auto& c : p.checks)
                if (c.name == name)
                    ++counts[static_cast<int>(c.status)];
        std::snprintf(line, sizeof line, "%-20s %6zu %6zu %6zu\n", name.c_str(), counts[0], counts[1], counts[2]);
        os << line;
    }
    os << "programs: " << programs.size() << ", failing: " << failingPrograms() << '\n';
    for (const auto& p : programs) {
        if (p.passed())
            continue;
        os << "\nprogram " << p.index << " failed:\n";
        for (const auto& c : p.checks)
            if (c.status == CheckOutcome::Status::Fail)
                os << "  " << c.name << ": " << c.detail << '\n';
        os << "source:\n" << p.source;
        if (p.shrunk)
            os << "shrunk:\n" << *p.shrunk;
    }
    return os.str();
}

} // namespace dfa
