#include "dfa/analyses.hpp"

#include <memory>

namespace dfa {

std::string toString(AnalysisKind kind)
{
    switch (kind) {
    case AnalysisKind::LiveVariables:
        return "live-vars";
    case AnalysisKind::VeryBusy:
        return "very-busy";
    case AnalysisKind::DefinedVariables:
        return "defined-vars";
    case AnalysisKind::ReachingDefinitions:
        return "reaching-defs";
    }
    return "unknown";
}

std::string shortName(AnalysisKind kind)
{
    switch (kind) {
    case AnalysisKind::LiveVariables:
        return "lv";
    case AnalysisKind::VeryBusy:
        return "vbe";
    case AnalysisKind::DefinedVariables:
        return "dv";
    case AnalysisKind::ReachingDefinitions:
        return "rd";
    }
    return "unknown";
}

std::optional<AnalysisKind> parseAnalysisKind(const std::string& name)
{
    for (AnalysisKind k : allAnalysisKinds)
        if (name == toString(k) || name == shortName(k))
            return k;
    return std::nullopt;
}

Direction directionOf(AnalysisKind kind)
{
    return isProphecy(kind) ? Direction::Backward : Direction::Forward;
}

LatticeOrder orderOf(AnalysisKind kind)
{
    switch (kind) {
    case AnalysisKind::LiveVariables:
        return LatticeOrder::Subset;
    case AnalysisKind::VeryBusy:
    case AnalysisKind::DefinedVariables:
        return LatticeOrder::ReverseSubset;
    case AnalysisKind::ReachingDefinitions:
        return LatticeOrder::PointwiseSubset;
    }
    return LatticeOrder::Subset;
}

bool isProphecy(AnalysisKind kind)
{
    return kind == AnalysisKind::LiveVariables || kind == AnalysisKind::VeryBusy;
}

UniversePtr universeFor(AnalysisKind kind, const Program& program)
{
    switch (kind) {
    case AnalysisKind::LiveVariables:
    case AnalysisKind::DefinedVariables:
        return Universe::ofVariables(variables(program));
    case AnalysisKind::VeryBusy:
        return Universe::ofExpressions(subexpressions(program));
    case AnalysisKind::ReachingDefinitions:
        return Universe::ofDefinitions(variables(program), program.labels());
    }
    return nullptr;
}

Fact transferLV(const Program& program, std::size_t i, const Fact& beta)
{
    const Command& c = program.command(i);
    Fact out = beta;
    if (const auto* a = std::get_if<Assign>(&c))
        out.eraseVariable(a->variable);
    for (const auto& v : variables(c))
        out.insertVariable(v);
    return out;
}

Fact transferVBE(const Program& program, std::size_t i, const Fact& beta)
{
    const Command& c = program.command(i);
    Fact out = beta;
    if (const auto* a = std::get_if<Assign>(&c)) {
        for (const auto& e : beta.expressions()) {
            if (variables(e).contains(a->variable))
                out.bits().reset(*beta.universe()->expressionIndex(e));
        }
    }
    for (const auto& e : subexpressions(c))
        out.insertExpression(e);
    return out;
}

Fact transferDV(const Program& program, std::size_t i, const Fact& beta)
{
    Fact out = beta;
    if (auto v = assignedVariable(program.command(i)))
        out.insertVariable(*v);
    return out;
}

Fact transferRD(const Program& program, std::size_t i, const Fact& beta)
{
    Fact out = beta;
    if (auto v = assignedVariable(program.command(i)))
        out.setDefinition(*v, program.label(i));
    return out;
}

Fact transfer(AnalysisKind kind, const Program& program, std::size_t i, const Fact& beta)
{
    switch (kind) {
    case AnalysisKind::LiveVariables:
        return transferLV(program, i, beta);
    case AnalysisKind::VeryBusy:
        return transferVBE(program, i, beta);
    case AnalysisKind::DefinedVariables:
        return transferDV(program, i, beta);
    case AnalysisKind::ReachingDefinitions:
        return transferRD(program, i, beta);
    }
    return beta;
}

GenKill genKill(AnalysisKind kind, const Program& program, const UniversePtr& universe, std::size_t i)
{
    const LatticeOrder order = orderOf(kind);
    GenKill gk{Fact::empty(universe, order), Fact::empty(universe, order)};
    const Command& c = program.command(i);
    const auto assigned = assignedVariable(c);
    switch (kind) {
    case AnalysisKind::LiveVariables:
        if (assigned)
            gk.kill.insertVariable(*assigned);
        for (const auto& v : variables(c))
            gk.gen.insertVariable(v);
        break;
    case AnalysisKind::VeryBusy:
        if (assigned) {
            const auto& exprs = universe->expressions();
            for (std::size_t k = 0; k < exprs.size(); ++k)
                if (variables(exprs[k]).contains(*assigned))
                    gk.kill.bits().set(k);
        }
        for (const auto& e : subexpressions(c))
            gk.gen.insertExpression(e);
        break;
    case AnalysisKind::DefinedVariables:
        if (assigned)
            gk.gen.insertVariable(*assigned);
        break;
    case AnalysisKind::ReachingDefinitions:
        if (assigned) {
            const std::size_t vi = *universe->variableIndex(*assigned);
            for (std::size_t li = 0; li < universe->labels().size(); ++li)
                gk.kill.bits().set(universe->definitionIndex(vi, li));
            gk.gen.bits().set(universe->definitionIndex(vi, *universe->labelIndex(program.label(i))));
        }
        break;
    }
    return gk;
}

AnalysisSpec makeSpec(AnalysisKind kind, const Program& program, const std::set<std::string>& observe)
{
    AnalysisSpec spec;
    spec.name = toString(kind);
    spec.direction = directionOf(kind);
    spec.order = orderOf(kind);
    spec.universe = universeFor(kind, program);
    const UniversePtr& u = spec.universe;
    const std::size_t n = program.size();

    auto masks = std::make_shared<std::vector<std::pair<Fact::Bits, Fact::Bits>>>();
    masks->reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        GenKill gk = genKill(kind, program, u, i);
        masks->emplace_back(~gk.kill.bits(), gk.gen.bits());
    }
    spec.transfer = [masks, u, order = spec.order](std::size_t i, const Fact& beta) {
        const auto& [keep, gen] = (*masks)[i];
        return Fact(u, order, (beta.bits() & keep) | gen);
    };

    switch (kind) {
    case AnalysisKind::LiveVariables: {
        const auto programVars = variables(program);
        for (const auto& v : observe)
            if (!programVars.contains(v))
                throw Error("unknown-observe-variable", "observed variable " + v + " does not occur in the program");
        Fact exitFact = Fact::ofVariables(u, spec.order, observe);
        for (std::size_t i = 0; i < n; ++i)
            if (isHalt(program.command(i)) || isDone(program.command(i)))
                spec.boundary.emplace(i, exitFact);
        break;
    }
    case AnalysisKind::VeryBusy:
        for (std::size_t i = 0; i < n; ++i)
            if (isDone(program.command(i)))
                spec.boundary.emplace(i, Fact::empty(u, spec.order));
        break;
    case AnalysisKind::DefinedVariables:
    case AnalysisKind::ReachingDefinitions:
        if (n > 0)
            spec.boundary.emplace(program.first(), Fact::empty(u, spec.order));
        break;
    }
    return spec;
}

AnalysisResult analyze(AnalysisKind kind, const Program& program, const std::set<std::string>& observe)
{
    return solve(program, makeSpec(kind, program, observe));
}

std::vector<Label> liveReadViolations(const Program& program, const AnalysisResult& lv)
{
    std::vector<Label> out;
    for (std::size_t i = 0; i < program.size(); ++i) {
        for (const auto& v : variables(program.command(i))) {
            if (!lv.before[i].containsVariable(v)) {
                out.push_back(program.label(i));
                break;
            }
        }
    }
    return out;
}

std::vector<VbeKillViolation> vbeKillViolations(const Program& program, const AnalysisResult& vbe)
{
    std::vector<VbeKillViolation> out;
    for (std::size_t i = 0; i < program.size(); ++i) {
        const auto* a = std::get_if<Assign>(&program.command(i));
        if (!a)
            continue;
        const auto subs = subexpressions(a->expr);
        for (const auto& e : vbe.before[i].expressions())
            if (variables(e).contains(a->variable) && !subs.contains(e))
                out.push_back({program.label(i), e});
    }
    return out;
}

std::vector<Label> unreachableLabels(const Program& program)
{
    const std::size_t n = program.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack;
    if (n > 0) {
        seen[program.first()] = true;
        stack.push_back(program.first());
    }
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t s : program.successors(i)) {
            if (!seen[s]) {
                seen[s] = true;
                stack.push_back(s);
            }
        }
    }
    std::vector<Label> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            out.push_back(program.label(i));
    return out;
}

} // namespace dfa
