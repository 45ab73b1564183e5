#include "dfa/interp.hpp"

#include <sstream>

namespace dfa {

std::string Fault::describe() const
{
    if (kind == Kind::UndefinedVariable)
        return "read of undefined " + variable;
    if (kind == Kind::ReadRefused)
        return "read of " + variable + " refused";
    return "arithmetic overflow in " + expression;
}

EvalResult<std::int64_t> evalA(const AExp& e, const State& state, const ReadGuard& guard)
{
    switch (e.kind()) {
    case AExp::Kind::Literal:
        return {e.value(), std::nullopt};
    case AExp::Kind::Variable: {
        auto it = state.find(e.name());
        if (it == state.end())
            return {std::nullopt, Fault{Fault::Kind::UndefinedVariable, e.name(), {}}};
        if (guard && !guard(e.name()))
            return {std::nullopt, Fault{Fault::Kind::ReadRefused, e.name(), {}}};
        return {it->second, std::nullopt};
    }
    case AExp::Kind::Binary: {
        auto l = evalA(e.lhs(), state, guard);
        if (!l.ok())
            return l;
        auto r = evalA(e.rhs(), state, guard);
        if (!r.ok())
            return r;
        std::int64_t out = 0;
        bool overflow = false;
        switch (e.op()) {
        case ArithOp::Plus:
            overflow = __builtin_add_overflow(*l.value, *r.value, &out);
            break;
        case ArithOp::Minus:
            overflow = __builtin_sub_overflow(*l.value, *r.value, &out);
            break;
        case ArithOp::Times:
            overflow = __builtin_mul_overflow(*l.value, *r.value, &out);
            break;
        }
        if (overflow)
            return {std::nullopt, Fault{Fault::Kind::Overflow, {}, toString(e)}};
        return {out, std::nullopt};
    }
    }
    return {};
}

EvalResult<bool> evalB(const BExp& b, const State& state, const ReadGuard& guard)
{
    switch (b.kind()) {
    case BExp::Kind::True:
        return {true, std::nullopt};
    case BExp::Kind::False:
        return {false, std::nullopt};
    case BExp::Kind::Compare: {
        auto l = evalA(b.left(), state, guard);
        if (!l.ok())
            return {std::nullopt, l.fault};
        auto r = evalA(b.right(), state, guard);
        if (!r.ok())
            return {std::nullopt, r.fault};
        return {b.compareOp() == CompareOp::Eq ? *l.value == *r.value : *l.value <= *r.value, std::nullopt};
    }
    case BExp::Kind::Not: {
        auto v = evalB(b.operand(), state, guard);
        if (!v.ok())
            return v;
        return {!*v.value, std::nullopt};
    }
    case BExp::Kind::And:
    case BExp::Kind::Or: {
        auto l = evalB(b.first(), state, guard);
        if (!l.ok())
            return l;
        auto r = evalB(b.second(), state, guard);
        if (!r.ok())
            return r;
        const bool v = b.kind() == BExp::Kind::And ? (*l.value && *r.value) : (*l.value || *r.value);
        return {v, std::nullopt};
    }
    }
    return {};
}

StepResult step(const Program& program, const Config& config)
{
    const std::size_t i = program.at(config.label);
    const Command& cmd = program.command(i);
    auto nextLabel = [&]() -> Label {
        auto n = program.next(i);
        if (!n)
            throw Error("invalid-program", "command at " + config.label.name + " has no next label");
        return program.label(*n);
    };
    auto stuck = [](Fault f) { return StepResult{StepResult::Kind::Stuck, std::nullopt, std::move(f)}; };
    auto to = [](Label l, State s) {
        return StepResult{StepResult::Kind::Next, Config{std::move(l), std::move(s)}, std::nullopt};
    };

    if (std::holds_alternative<Done>(cmd))
        return {StepResult::Kind::Terminal, std::nullopt, std::nullopt};
    if (std::holds_alternative<Skip>(cmd) || std::holds_alternative<Halt>(cmd))
        return to(nextLabel(), config.state);
    if (const auto* g = std::get_if<Goto>(&cmd))
        return to(g->target, config.state);
    if (const auto* a = std::get_if<Assign>(&cmd)) {
        auto v = evalA(a->expr, config.state);
        if (!v.ok())
            return stuck(*v.fault);
        State s = config.state;
        s[a->variable] = *v.value;
        return to(nextLabel(), std::move(s));
    }
    const auto& br = std::get<Branch>(cmd);
    auto v = evalB(br.cond, config.state);
    if (!v.ok())
        return stuck(*v.fault);
    return to(*v.value ? br.target : nextLabel(), config.state);
}

std::string toString(Outcome outcome)
{
    switch (outcome) {
    case Outcome::Done:
        return "done";
    case Outcome::Stuck:
        return "stuck";
    case Outcome::Overflow:
        return "overflow";
    case Outcome::BudgetExhausted:
        return "budget-exhausted";
    }
    return "unknown";
}

Trace run(const Program& program, std::size_t maxSteps)
{
    if (auto errors = validate(program); !errors.empty())
        throw Error("invalid-program", errors.front().message());
    Trace trace;
    trace.configs.push_back({program.label(program.first()), {}});
    for (;;) {
        const Config& current = trace.configs.back();
        if (isDone(program.command(program.at(current.label)))) {
            trace.outcome = Outcome::Done;
            return trace;
        }
        if (trace.transitions() >= maxSteps) {
            trace.outcome = Outcome::BudgetExhausted;
            return trace;
        }
        StepResult r = step(program, current);
        if (r.kind == StepResult::Kind::Stuck) {
            trace.outcome = r.fault->kind == Fault::Kind::Overflow ? Outcome::Overflow : Outcome::Stuck;
            trace.faultLabel = current.label;
            trace.fault = r.fault;
            return trace;
        }
        trace.configs.push_back(std::move(*r.next));
    }
}

std::string toString(const State& state)
{
    std::string out = "{";
    bool firstItem = true;
    for (const auto& [k, v] : state) {
        if (!firstItem)
            out += ", ";
        firstItem = false;
        out += k + "=" + std::to_string(v);
    }
    return out + "}";
}

namespace {

std::string countSteps(std::size_t n) { return std::to_string(n) + (n == 1 ? " step" : " steps"); }

} // namespace

std::string outcomeMessage(const Trace& trace)
{
    switch (trace.outcome) {
    case Outcome::Done:
        return "done after " + countSteps(trace.transitions());
    case Outcome::Stuck:
    case Outcome::Overflow:
        return "stuck at " + trace.faultLabel->name + ": " + trace.fault->describe();
    case Outcome::BudgetExhausted:
        return "budget exhausted after " + countSteps(trace.transitions());
    }
    return "";
}

std::string traceToText(const Trace& trace)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < trace.configs.size(); ++i)
        os << i << ": " << trace.configs[i].label.name << ' ' << toString(trace.configs[i].state) << '\n';
    os << "outcome: " << outcomeMessage(trace) << '\n';
    return os.str();
}

} // namespace dfa
