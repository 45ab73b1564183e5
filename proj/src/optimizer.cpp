#include "dfa/optimizer.hpp"

#include "dfa/analyses.hpp"

#include <algorithm>

namespace dfa {

std::string RewriteLog::toText() const
{
    if (entries.empty())
        return "no rewrites\n";
    std::string out;
    for (const auto& e : entries) {
        out += e.label.name + ": " + e.kind + ": " + e.before + " => " + e.after + "\n";
        for (const auto& j : e.justification)
            out += "    " + j + "\n";
    }
    return out;
}

AExp substitute(const AExp& e, const std::map<std::string, std::int64_t>& values)
{
    switch (e.kind()) {
    case AExp::Kind::Literal:
        return e;
    case AExp::Kind::Variable: {
        auto it = values.find(e.name());
        return it == values.end() ? e : AExp::literal(it->second);
    }
    case AExp::Kind::Binary:
        return AExp::binary(e.op(), substitute(e.lhs(), values), substitute(e.rhs(), values));
    }
    return e;
}

BExp substitute(const BExp& b, const std::map<std::string, std::int64_t>& values)
{
    switch (b.kind()) {
    case BExp::Kind::True:
    case BExp::Kind::False:
        return b;
    case BExp::Kind::Compare:
        return BExp::compare(b.compareOp(), substitute(b.left(), values), substitute(b.right(), values));
    case BExp::Kind::Not:
        return BExp::negation(substitute(b.operand(), values));
    case BExp::Kind::And:
        return BExp::conjunction(substitute(b.first(), values), substitute(b.second(), values));
    case BExp::Kind::Or:
        return BExp::disjunction(substitute(b.first(), values), substitute(b.second(), values));
    }
    return b;
}

namespace {

std::set<std::string> restrictTo(const std::set<std::string>& vars, const std::set<std::string>& universe)
{
    std::set<std::string> out;
    std::set_intersection(vars.begin(), vars.end(), universe.begin(), universe.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace

OptimizationResult deadStoreElim(const Program& program, const std::set<std::string>& observe)
{
    OptimizationResult out{program, {}};
    for (;;) {
        const Program& p = out.program;
        // Observed variables the program never mentions cannot be affected. A
        // removed store can also take the last mention of one with it.
        const auto lv = analyze(AnalysisKind::LiveVariables, p, restrictTo(observe, variables(p)));
        const auto dv = analyze(AnalysisKind::DefinedVariables, p);
        std::vector<LabeledCommand> commands = p.commands();
        bool changed = false;
        for (std::size_t i = 0; i < commands.size(); ++i) {
            const auto* a = std::get_if<Assign>(&commands[i].command);
            if (!a || lv.after[i].containsVariable(a->variable))
                continue;
            bool defined = true;
            for (const auto& v : variables(a->expr))
                defined = defined && dv.before[i].containsVariable(v);
            if (!defined)
                continue;
            out.log.entries.push_back({commands[i].label,
                                       "dead-store",
                                       toString(commands[i].command),
                                       "skip",
                                       {"live-after = " + lv.after[i].toString(),
                                        "defined-before = " + dv.before[i].toString()}});
            commands[i].command = Skip{};
            changed = true;
        }
        if (!changed)
            return out;
        out.program = Program(std::move(commands));
    }
}

OptimizationResult constProp(const Program& program)
{
    OptimizationResult out{program, {}};
    for (;;) {
        const Program& p = out.program;
        const auto rd = analyze(AnalysisKind::ReachingDefinitions, p);
        const auto dv = analyze(AnalysisKind::DefinedVariables, p);
        std::vector<LabeledCommand> commands = p.commands();
        bool changed = false;
        for (std::size_t i = 0; i < commands.size(); ++i) {
            std::map<std::string, std::int64_t> constants;
            std::vector<std::string> justification;
            for (const auto& v : variables(commands[i].command)) {
                if (!dv.before[i].containsVariable(v))
                    continue;
                const auto defs = rd.before[i].definitionsOf(v);
                if (defs.empty())
                    continue;
                std::optional<std::int64_t> value;
                bool agree = true;
                for (const auto& g : defs) {
                    const auto* a = std::get_if<Assign>(&p.command(p.at(g)));
                    if (!a || a->variable != v || a->expr.kind() != AExp::Kind::Literal ||
                        (value && *value != a->expr.value())) {
                        agree = false;
                        break;
                    }
                    value = a->expr.value();
                }
                if (!agree)
                    continue;
                constants[v] = *value;
                std::string labels;
                for (const auto& g : defs)
                    labels += (labels.empty() ? "" : ", ") + g.name;
                justification.push_back(v + " defined before " + commands[i].label.name + "; reaching definitions {" +
                                        labels + "} all assign " + std::to_string(*value));
            }
            if (constants.empty())
                continue;
            const std::string before = toString(commands[i].command);
            if (auto* a = std::get_if<Assign>(&commands[i].command))
                a->expr = substitute(a->expr, constants);
            else if (auto* b = std::get_if<Branch>(&commands[i].command))
                b->cond = substitute(b->cond, constants);
            out.log.entries.push_back(
                {commands[i].label, "constant", before, toString(commands[i].command), std::move(justification)});
            changed = true;
        }
        if (!changed)
            return out;
        out.program = Program(std::move(commands));
    }
}

DiffVerdict compareRuns(const Program& original, const Program& transformed, std::size_t maxSteps,
                        const std::optional<std::set<std::string>>& observe)
{
    using Kind = DiffVerdict::Kind;
    const Trace a = run(original, maxSteps);
    if (a.outcome == Outcome::Overflow)
        return {Kind::Inconclusive, "original run overflows: " + outcomeMessage(a)};
    const Trace b = run(transformed, maxSteps);
    if (a.outcome != b.outcome)
        return {Kind::Different, "outcome " + toString(a.outcome) + " became " + toString(b.outcome)};
    if (a.outcome == Outcome::Stuck && !(a.faultLabel == b.faultLabel))
        return {Kind::Different, "stuck label " + a.faultLabel->name + " became " + b.faultLabel->name};
    if (a.outcome != Outcome::Done)
        return {Kind::Same, {}};
    const State& sa = a.finalState();
    const State& sb = b.finalState();
    if (!observe) {
        if (sa != sb)
            return {Kind::Different, "final state " + toString(sa) + " became " + toString(sb)};
        return {Kind::Same, {}};
    }
    for (const auto& v : *observe) {
        auto ia = sa.find(v);
        auto ib = sb.find(v);
        const bool da = ia != sa.end();
        const bool db = ib != sb.end();
        if (da != db || (da && ia->second != ib->second))
            return {Kind::Different, "observed " + v + " differs: " + toString(sa) + " vs " + toString(sb)};
    }
    return {Kind::Same, {}};
}

} // namespace dfa
