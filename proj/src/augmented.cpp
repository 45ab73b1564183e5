#include "dfa/augmented.hpp"

#include <sstream>

namespace dfa {

std::string toString(RefusalReason reason)
{
    return reason == RefusalReason::ProphecyPreconditionViolated ? "prophecy-precondition-violated"
                                                                 : "prediction-inconsistent";
}

std::string toString(AugTrace::Outcome outcome)
{
    switch (outcome) {
    case AugTrace::Outcome::Done:
        return "done";
    case AugTrace::Outcome::Stuck:
        return "stuck";
    case AugTrace::Outcome::Refused:
        return "refused";
    case AugTrace::Outcome::BudgetExhausted:
        return "budget-exhausted";
    }
    return "unknown";
}

namespace {

std::vector<std::string> names(const std::set<std::string>& vars) { return {vars.begin(), vars.end()}; }

std::vector<std::string> domainOf(const State& state)
{
    std::vector<std::string> out;
    for (const auto& [k, v] : state)
        out.push_back(k);
    return out;
}

AugStepResult refused(RefusalReason reason, std::string detail, std::vector<std::string> expected,
                      std::vector<std::string> actual)
{
    AugStepResult r{AugStepResult::Status::Refused, std::nullopt, reason, std::nullopt, std::move(detail),
                    std::move(expected), std::move(actual)};
    return r;
}

enum class Relation { Equal, SubsetOf, SupersetOf };

/// Checks proposed against bound under `relation`, producing an acceptance or
/// a prediction-inconsistent refusal.
AugStepResult settle(Relation relation, const Fact& bound, const Fact& proposed, Config next)
{
    bool ok = false;
    std::string words;
    switch (relation) {
    case Relation::Equal:
        ok = bound == proposed;
        words = "equal to";
        break;
    case Relation::SubsetOf:
        ok = isSubset(proposed, bound);
        words = "a subset of";
        break;
    case Relation::SupersetOf:
        ok = isSubset(bound, proposed);
        words = "a superset of";
        break;
    }
    if (!ok)
        return refused(RefusalReason::PredictionInconsistent,
                       "proposed " + proposed.toString() + " is not " + words + " " + bound.toString(), bound.atoms(),
                       proposed.atoms());
    AugStepResult r{AugStepResult::Status::Accepted,
                    AugConfig{std::move(next.label), std::move(next.state), proposed},
                    std::nullopt,
                    std::nullopt,
                    {},
                    {},
                    {}};
    return r;
}

Fact expressionFact(const Fact& like, const std::set<AExp>& exprs)
{
    return Fact::ofExpressions(like.universe(), like.order(), exprs);
}

} // namespace

AugStepResult augStep(AnalysisKind kind, const Program& program, const AugConfig& c, const Fact& proposed,
                      bool metarule)
{
    requireCompatible(c.pi, proposed);
    if (c.pi.order() != orderOf(kind))
        throw Error("universe-mismatch", "fact order does not match analysis " + toString(kind));
    const std::size_t i = program.at(c.label);
    const Command& cmd = program.command(i);
    const Fact& pi = c.pi;

    if (isDone(cmd))
        return {AugStepResult::Status::Terminal, std::nullopt, std::nullopt, std::nullopt, {}, {}, {}};

    auto nextLabel = [&]() -> Label {
        auto n = program.next(i);
        if (!n)
            throw Error("invalid-program", "command at " + c.label.name + " has no next label");
        return program.label(*n);
    };

    // Standard transition, with LV's read precondition v ∈ π folded into evaluation.
    ReadGuard guard;
    if (kind == AnalysisKind::LiveVariables)
        guard = [&pi](const std::string& v) { return pi.containsVariable(v); };
    std::optional<Fault> fault;
    Config next;
    if (const auto* a = std::get_if<Assign>(&cmd)) {
        auto v = evalA(a->expr, c.state, guard);
        if (v.ok()) {
            next = {nextLabel(), c.state};
            next.state[a->variable] = *v.value;
        } else {
            fault = v.fault;
        }
    } else if (const auto* br = std::get_if<Branch>(&cmd)) {
        auto v = evalB(br->cond, c.state, guard);
        if (v.ok())
            next = {*v.value ? br->target : nextLabel(), c.state};
        else
            fault = v.fault;
    } else if (const auto* g = std::get_if<Goto>(&cmd)) {
        next = {g->target, c.state};
    } else {
        next = {nextLabel(), c.state};
    }
    if (fault) {
        if (fault->kind == Fault::Kind::ReadRefused)
            return refused(RefusalReason::ProphecyPreconditionViolated,
                           fault->variable + " is read at " + c.label.name + " but not predicted live",
                           names(variables(cmd)), pi.atoms());
        return {AugStepResult::Status::Stuck, std::nullopt, std::nullopt, fault, fault->describe(), {}, {}};
    }

    const auto* assign = std::get_if<Assign>(&cmd);
    const bool branch = std::holds_alternative<Branch>(cmd);

    switch (kind) {
    case AnalysisKind::LiveVariables: {
        if (assign) {
            Fact bound = pi;
            bound.insertVariable(assign->variable);
            return settle(Relation::SubsetOf, bound, proposed, std::move(next));
        }
        if (branch)
            return settle(Relation::SubsetOf, pi, proposed, std::move(next));
        return settle(metarule ? Relation::SubsetOf : Relation::Equal, pi, proposed, std::move(next));
    }
    case AnalysisKind::VeryBusy: {
        if (assign) {
            const auto subs = subexpressions(assign->expr);
            for (const auto& e : pi.expressions()) {
                if (!subs.contains(e) && variables(e).contains(assign->variable)) {
                    return refused(RefusalReason::ProphecyPreconditionViolated,
                                   toString(e) + " is predicted very busy but " + assign->variable +
                                       " is reassigned at " + c.label.name + " without evaluating it",
                                   {}, pi.atoms());
                }
            }
            Fact bound = setDifference(pi, expressionFact(pi, subs));
            return settle(Relation::SupersetOf, bound, proposed, std::move(next));
        }
        if (branch) {
            Fact bound = setDifference(pi, expressionFact(pi, subexpressions(cmd)));
            return settle(Relation::SupersetOf, bound, proposed, std::move(next));
        }
        if (isHalt(cmd) && !pi.isEmpty())
            return refused(RefusalReason::ProphecyPreconditionViolated,
                           "halt at " + c.label.name + " requires no predicted very busy expressions", {},
                           pi.atoms());
        return settle(metarule ? Relation::SupersetOf : Relation::Equal, pi, proposed, std::move(next));
    }
    case AnalysisKind::DefinedVariables: {
        Fact base = pi;
        if (assign)
            base.insertVariable(assign->variable);
        // Upward closure in reverse-subset order: any subset of the recorded set.
        return settle(Relation::SubsetOf, base, proposed, std::move(next));
    }
    case AnalysisKind::ReachingDefinitions: {
        Fact base = pi;
        if (assign)
            base.setDefinition(assign->variable, c.label);
        return settle(Relation::SupersetOf, base, proposed, std::move(next));
    }
    }
    return {};
}

std::optional<Fact> initialHistory(AnalysisKind kind, const UniversePtr& universe)
{
    if (isProphecy(kind))
        return std::nullopt;
    return Fact::empty(universe, orderOf(kind));
}

Prediction analysisPolicy(const AnalysisResult& result)
{
    return [&result](const Label& l) { return result.beforeAt(l); };
}

Prediction explicitPolicy(std::map<Label, Fact> table)
{
    return [table = std::move(table)](const Label& l) {
        auto it = table.find(l);
        if (it == table.end())
            throw Error("unknown-label", "explicit policy has no prediction for " + l.name);
        return it->second;
    };
}

std::vector<AugConfig> enumerateSuccessors(AnalysisKind kind, const Program& program, const AugConfig& c,
                                           bool metarule, std::size_t maxBits)
{
    const std::size_t bits = c.pi.universe()->size();
    if (bits > maxBits)
        throw Error("universe-too-large", "universe has " + std::to_string(bits) + " elements; enumeration limit is " +
                                              std::to_string(maxBits));
    std::vector<AugConfig> out;
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Fact::Bits b(bits, static_cast<unsigned long>(mask));
        Fact candidate(c.pi.universe(), c.pi.order(), std::move(b));
        AugStepResult r = augStep(kind, program, c, candidate, metarule);
        if (r.accepted())
            out.push_back(std::move(*r.next));
    }
    return out;
}

AugTrace runAugmented(AnalysisKind kind, const Program& program, const Fact& pi0, const Prediction& predict,
                      bool metarule, std::size_t maxSteps)
{
    AugTrace trace;
    trace.configs.push_back({program.label(program.first()), {}, pi0});
    for (;;) {
        const AugConfig& current = trace.configs.back();
        if (isDone(program.command(program.at(current.label)))) {
            trace.outcome = AugTrace::Outcome::Done;
            return trace;
        }
        if (trace.configs.size() - 1 >= maxSteps) {
            trace.outcome = AugTrace::Outcome::BudgetExhausted;
            return trace;
        }
        StepResult standard = step(program, current.projection());
        if (standard.kind != StepResult::Kind::Next) {
            trace.outcome = AugTrace::Outcome::Stuck;
            trace.detail = standard.fault ? standard.fault->describe() : "";
            return trace;
        }
        AugStepResult r = augStep(kind, program, current, predict(standard.next->label), metarule);
        if (r.status == AugStepResult::Status::Stuck) {
            trace.outcome = AugTrace::Outcome::Stuck;
            trace.detail = r.detail;
            return trace;
        }
        if (!r.accepted()) {
            trace.outcome = AugTrace::Outcome::Refused;
            trace.detail = r.detail;
            return trace;
        }
        trace.configs.push_back(std::move(*r.next));
    }
}

// --- reports ---------------------------------------------------------------

namespace {

std::string braced(const std::vector<std::string>& items)
{
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out + "}";
}

} // namespace

std::string CheckFailure::describe() const
{
    std::string out = "step " + std::to_string(step) + " at " + label.name + ": " + rule;
    if (!detail.empty())
        out += ": " + detail;
    if (!expected.empty() || !actual.empty())
        out += " (expected " + braced(expected) + ", actual " + braced(actual) + ")";
    return out;
}

void CheckReport::merge(const CheckReport& other)
{
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    stepsChecked = std::max(stepsChecked, other.stepsChecked);
}

std::string CheckReport::toText() const
{
    std::ostringstream os;
    if (passed())
        os << "PASS (" << stepsChecked << " steps checked)\n";
    else
        os << "FAIL (" << failures.size() << (failures.size() == 1 ? " failure" : " failures") << ")\n";
    for (const auto& f : failures)
        os << "  " << f.describe() << '\n';
    for (const auto& n : notes)
        os << "note: " << n << '\n';
    return os.str();
}

CheckReport checkPreservation(const Program& program, const std::vector<AugConfig>& trace)
{
    CheckReport report;
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const Config from = trace[i].projection();
        const Config to = trace[i + 1].projection();
        StepResult r = step(program, from);
        if (r.kind != StepResult::Kind::Next) {
            report.failures.push_back({i, from.label, "projection-mismatch",
                                       "no standard step exists from " + from.label.name + " " + toString(from.state),
                                       {},
                                       {to.label.name + " " + toString(to.state)}});
        } else if (!(*r.next == to)) {
            report.failures.push_back({i, from.label, "projection-mismatch", "augmented step disagrees with standard step",
                                       {r.next->label.name + " " + toString(r.next->state)},
                                       {to.label.name + " " + toString(to.state)}});
        }
    }
    report.stepsChecked = trace.empty() ? 0 : trace.size() - 1;
    return report;
}

CheckReport checkProgress(AnalysisKind kind, const Program& program, const AnalysisResult& result, const Trace& trace,
                          bool metarule)
{
    CheckReport report;
    const auto& configs = trace.configs;
    if (configs.empty())
        return report;
    if (auto pi0 = initialHistory(kind, result.before.front().universe())) {
        const Fact& first = result.before[program.first()];
        if (!leq(*pi0, first))
            report.failures.push_back({0, configs.front().label, "initial-history",
                                       "initial history value is not below before(first)", pi0->atoms(),
                                       first.atoms()});
    }
    for (std::size_t i = 0; i + 1 < configs.size(); ++i) {
        const std::size_t at = program.at(configs[i].label);
        const std::size_t to = program.at(configs[i + 1].label);
        AugConfig c{configs[i].label, configs[i].state, result.before[at]};
        AugStepResult r = augStep(kind, program, c, result.before[to], metarule);
        if (r.accepted()) {
            if (!(r.next->projection() == configs[i + 1]))
                report.failures.push_back({i, configs[i].label, "projection-mismatch",
                                           "augmented step disagrees with standard step", {}, {}});
            continue;
        }
        std::string rule = r.reason ? toString(*r.reason) : "stuck";
        report.failures.push_back({i, configs[i].label, rule, r.detail, r.expected, r.actual});
    }
    report.stepsChecked = trace.transitions();
    if (trace.outcome == Outcome::BudgetExhausted)
        report.notes.push_back("budget exhausted after " + std::to_string(trace.transitions()) +
                               " steps; the executed prefix was checked");
    else if (trace.outcome != Outcome::Done)
        report.notes.push_back("standard execution " + outcomeMessage(trace));
    return report;
}

CheckReport checkProgress(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                          std::size_t maxSteps, bool metarule)
{
    return checkProgress(kind, program, result, run(program, maxSteps), metarule);
}

// --- trace theorems --------------------------------------------------------

namespace {

struct TraceView {
    const Program& program;
    std::vector<std::size_t> index; // command index of each configuration
    std::vector<const State*> states;
    std::size_t executed;           // configurations whose command completed

    TraceView(const Program& p, const Trace& t) : program(p)
    {
        for (const auto& c : t.configs) {
            index.push_back(p.at(c.label));
            states.push_back(&c.state);
        }
        executed = t.transitions();
    }

    TraceView(const Program& p, const std::vector<AugConfig>& t) : program(p)
    {
        for (const auto& c : t) {
            index.push_back(p.at(c.label));
            states.push_back(&c.state);
        }
        executed = t.empty() ? 0 : t.size() - 1;
    }

    const Command& command(std::size_t i) const { return program.command(index[i]); }
    const Label& label(std::size_t i) const { return program.label(index[i]); }
};

void checkLiveVariables(const TraceView& t, const AnalysisResult& result, CheckReport& report)
{
    const auto& universe = result.before.front().universe();
    const std::size_t nv = universe->size();
    std::vector<bool> pending(nv, false);
    std::vector<std::size_t> since(nv, 0);
    // The read at l_j need not complete, so the final configuration counts too.
    for (std::size_t j = 0; j < t.index.size(); ++j) {
        const Command& c = t.command(j);
        const Fact& before = result.before[t.index[j]];
        for (std::size_t vi = 0; vi < nv; ++vi)
            if (!before.bits().test(vi) && !pending[vi]) {
                pending[vi] = true;
                since[vi] = j;
            }
        for (const auto& v : variables(c)) {
            const std::size_t vi = *universe->variableIndex(v);
            if (pending[vi]) {
                report.failures.push_back({j, t.label(j), "lv-intervening-write",
                                           v + " is read here but was not live before " + t.label(since[vi]).name +
                                               " (step " + std::to_string(since[vi]) + ") and not written since",
                                           {}, {}});
                pending[vi] = false;
            }
        }
        if (const auto assigned = assignedVariable(c))
            pending[*universe->variableIndex(*assigned)] = false;
    }
}

void checkVeryBusy(const TraceView& t, const AnalysisResult& result, bool terminated, CheckReport& report)
{
    const auto& universe = result.before.front().universe();
    const auto& exprs = universe->expressions();
    const std::size_t ne = exprs.size();
    Fact::Bits pending(ne);
    std::vector<std::size_t> since(ne, 0);
    auto absorb = [&](std::size_t j) {
        const Fact::Bits fresh = result.before[t.index[j]].bits() - pending;
        for (auto k = fresh.find_first(); k != Fact::Bits::npos; k = fresh.find_next(k))
            since[k] = j;
        pending |= fresh;
    };
    for (std::size_t j = 0; j < t.executed; ++j) {
        absorb(j);
        const Command& c = t.command(j);
        const auto subs = subexpressions(c);
        for (const auto& e : subs)
            if (auto k = universe->expressionIndex(e))
                pending.reset(*k);
        if (auto v = assignedVariable(c)) {
            for (auto k = pending.find_first(); k != Fact::Bits::npos; k = pending.find_next(k)) {
                if (variables(exprs[k]).contains(*v)) {
                    report.failures.push_back({j, t.label(j), "vbe-evaluated-before-kill",
                                               toString(exprs[k]) + " was very busy before " +
                                                   t.label(since[k]).name + " (step " + std::to_string(since[k]) +
                                                   ") but " + *v + " is reassigned before it is evaluated",
                                               {}, {}});
                    pending.reset(k);
                }
            }
        }
    }
    if (terminated) {
        const std::size_t last = t.index.size() - 1;
        absorb(last);
        for (auto k = pending.find_first(); k != Fact::Bits::npos; k = pending.find_next(k))
            report.failures.push_back({last, t.label(last), "vbe-evaluated-before-done",
                                       toString(exprs[k]) + " was very busy before " + t.label(since[k]).name +
                                           " (step " + std::to_string(since[k]) + ") but never evaluated",
                                       {}, {}});
    }
}

/// before(l_i)/π_i ⊆ dom(σ_i) at every configuration.
void checkDefinedSubset(const TraceView& t, const std::function<const Fact&(std::size_t)>& factAt,
                        const std::string& rule, CheckReport& report)
{
    for (std::size_t i = 0; i < t.index.size(); ++i) {
        const Fact& f = factAt(i);
        for (auto k = f.bits().find_first(); k != Fact::Bits::npos; k = f.bits().find_next(k)) {
            const std::string& v = f.universe()->variableNames()[k];
            if (!t.states[i]->contains(v)) {
                report.failures.push_back({i, t.label(i), rule, v + " is claimed defined but has no value",
                                           f.atoms(), domainOf(*t.states[i])});
                break;
            }
        }
    }
}

/// Every defined value was produced by an executed assignment whose label
/// appears in the recorded definition set.
void checkProvenance(const TraceView& t, const std::function<const Fact&(std::size_t)>& factAt,
                     const std::string& rule, CheckReport& report)
{
    std::map<std::string, std::size_t> lastDef;
    for (std::size_t i = 0; i < t.index.size(); ++i) {
        if (i > 0)
            if (auto v = assignedVariable(t.command(i - 1)))
                lastDef[*v] = i - 1;
        const Fact& f = factAt(i);
        for (const auto& [v, value] : *t.states[i]) {
            auto it = lastDef.find(v);
            bool ok = false;
            if (it != lastDef.end()) {
                const std::size_t k = it->second;
                ok = t.states[k + 1]->at(v) == value && f.containsDefinition(v, t.label(k));
                for (std::size_t k2 = 0; !ok && k2 < i; ++k2) {
                    auto w = assignedVariable(t.command(k2));
                    ok = w && *w == v && t.states[k2 + 1]->at(v) == value && f.containsDefinition(v, t.label(k2));
                }
            }
            if (!ok) {
                std::vector<std::string> recorded;
                for (const auto& l : f.definitionsOf(v))
                    recorded.push_back(l.name);
                std::vector<std::string> executed;
                if (it != lastDef.end())
                    executed.push_back(t.label(it->second).name);
                report.failures.push_back({i, t.label(i), rule,
                                           v + " = " + std::to_string(value) +
                                               " has no recorded definition that produced it",
                                           executed, recorded});
            }
        }
    }
}

} // namespace

CheckReport checkTraceTheorems(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                               const Trace& trace)
{
    CheckReport report;
    TraceView t(program, trace);
    report.stepsChecked = trace.transitions();
    auto beforeAt = [&](std::size_t i) -> const Fact& { return result.before[t.index[i]]; };
    switch (kind) {
    case AnalysisKind::LiveVariables:
        checkLiveVariables(t, result, report);
        break;
    case AnalysisKind::VeryBusy:
        checkVeryBusy(t, result, trace.outcome == Outcome::Done, report);
        break;
    case AnalysisKind::DefinedVariables:
        checkDefinedSubset(t, beforeAt, "dv-defined-subset", report);
        if (trace.outcome == Outcome::Stuck && trace.fault->kind == Fault::Kind::UndefinedVariable) {
            const std::size_t last = t.index.size() - 1;
            const auto reads = variables(t.command(last));
            const Fact& before = beforeAt(last);
            bool guarded = true;
            for (const auto& v : reads)
                guarded = guarded && before.containsVariable(v);
            if (guarded)
                report.failures.push_back({last, t.label(last), "dv-stuck-under-guard",
                                           "every read variable is claimed defined yet execution is stuck",
                                           before.atoms(), domainOf(*t.states[last])});
        }
        break;
    case AnalysisKind::ReachingDefinitions:
        checkProvenance(t, beforeAt, "rd-value-provenance", report);
        break;
    }
    return report;
}

CheckReport checkTraceTheoremsNaive(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                                    const Trace& trace)
{
    if (kind != AnalysisKind::LiveVariables && kind != AnalysisKind::VeryBusy)
        return checkTraceTheorems(kind, program, result, trace);
    CheckReport report;
    TraceView t(program, trace);
    report.stepsChecked = trace.transitions();
    const std::size_t n = t.executed;
    if (kind == AnalysisKind::LiveVariables) {
        for (std::size_t j = 0; j < t.index.size(); ++j) {
            for (const auto& v : variables(t.command(j))) {
                bool bad = false;
                for (std::size_t i = 0; i <= j && !bad; ++i) {
                    if (result.before[t.index[i]].containsVariable(v))
                        continue;
                    bool written = false;
                    for (std::size_t k = i; k < j && !written; ++k)
                        written = assignedVariable(t.command(k)) == v;
                    bad = !written;
                }
                if (bad)
                    report.failures.push_back({j, t.label(j), "lv-intervening-write", v, {}, {}});
            }
        }
        return report;
    }
    const bool terminated = trace.outcome == Outcome::Done;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : result.before[t.index[i]].expressions()) {
            std::optional<std::size_t> evaluated, killed;
            for (std::size_t k = i; k < n; ++k) {
                const Command& c = t.command(k);
                if (!evaluated && subexpressions(c).contains(e))
                    evaluated = k;
                auto v = assignedVariable(c);
                if (!killed && v && variables(e).contains(*v))
                    killed = k;
            }
            if (killed && (!evaluated || *evaluated > *killed))
                report.failures.push_back({*killed, t.label(*killed), "vbe-evaluated-before-kill", toString(e), {}, {}});
            else if (terminated && !evaluated)
                report.failures.push_back({n, t.label(n), "vbe-evaluated-before-done", toString(e), {}, {}});
        }
    }
    return report;
}

CheckReport checkAugmentedInvariants(AnalysisKind kind, const Program& program, const std::vector<AugConfig>& trace)
{
    CheckReport report;
    TraceView t(program, trace);
    report.stepsChecked = t.executed;
    auto piAt = [&](std::size_t i) -> const Fact& { return trace[i].pi; };
    switch (kind) {
    case AnalysisKind::LiveVariables:
        for (std::size_t i = 0; i < t.executed; ++i) {
            const Command& c = t.command(i);
            for (const auto& v : variables(c))
                if (!trace[i].pi.containsVariable(v))
                    report.failures.push_back(
                        {i, t.label(i), "lv-reads-predicted", v + " read without being predicted live", {}, {}});
            const Fact added = setDifference(trace[i + 1].pi, trace[i].pi);
            for (const auto& v : added.variables())
                if (assignedVariable(c) != v)
                    report.failures.push_back({i, t.label(i), "lv-becomes-live-only-at-assignment",
                                               v + " became live at a command that does not assign it", {}, {}});
        }
        break;
    case AnalysisKind::VeryBusy:
        for (std::size_t i = 0; i < t.executed; ++i) {
            const Fact dropped = setDifference(trace[i].pi, trace[i + 1].pi);
            const auto subs = subexpressions(t.command(i));
            for (const auto& e : dropped.expressions())
                if (!subs.contains(e))
                    report.failures.push_back({i, t.label(i), "vbe-leaves-only-when-evaluated",
                                               toString(e) + " left the prediction without being evaluated", {}, {}});
        }
        break;
    case AnalysisKind::DefinedVariables:
        checkDefinedSubset(t, piAt, "dv-history-subset", report);
        break;
    case AnalysisKind::ReachingDefinitions:
        checkProvenance(t, piAt, "rd-history-provenance", report);
        break;
    }
    return report;
}

CheckReport checkBisimulation(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                              std::size_t maxSteps, bool metarule, std::size_t maxBits)
{
    Trace trace = run(program, maxSteps);
    CheckReport report = checkProgress(kind, program, result, trace, metarule);
    const auto& configs = trace.configs;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::size_t at = program.at(configs[i].label);
        AugConfig c{configs[i].label, configs[i].state, result.before[at]};
        std::vector<AugConfig> successors = enumerateSuccessors(kind, program, c, metarule, maxBits);
        const bool last = i + 1 == configs.size();
        if (last && trace.outcome == Outcome::BudgetExhausted)
            break;
        for (const auto& s : successors) {
            if (last || !(s.projection() == configs[i + 1])) {
                report.failures.push_back({i, configs[i].label, "projection-mismatch",
                                           "augmented successor " + s.label.name + " " + toString(s.state) +
                                               " has no matching standard step",
                                           {}, s.pi.atoms()});
                break;
            }
        }
    }
    report.stepsChecked = trace.transitions();
    return report;
}

} // namespace dfa
