// Standard operational semantics: expression evaluation, the single-step
// relation on configurations, and budgeted runs producing traces.
#pragma once

#include "dfa/ast.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dfa {

using State = std::map<std::string, std::int64_t>;

struct Fault {
    enum class Kind { UndefinedVariable, Overflow, ReadRefused };
    Kind kind;
    std::string variable;   // the undefined or refused variable, if any
    std::string expression; // the overflowing operation, if any

    std::string describe() const;
    bool operator==(const Fault&) const = default;
};

template <typename T>
struct EvalResult {
    std::optional<T> value;
    std::optional<Fault> fault;

    bool ok() const { return value.has_value(); }
};

/// Consulted on every variable read after the definedness check; returning
/// false aborts evaluation with a ReadRefused fault.
using ReadGuard = std::function<bool(const std::string&)>;

/// Evaluates left to right and reports the first fault encountered. Both
/// operands of and/or are always evaluated.
EvalResult<std::int64_t> evalA(const AExp& e, const State& state, const ReadGuard& guard = {});
EvalResult<bool> evalB(const BExp& b, const State& state, const ReadGuard& guard = {});

struct Config {
    Label label;
    State state;
    bool operator==(const Config&) const = default;
};

struct StepResult {
    enum class Kind { Next, Stuck, Terminal };
    Kind kind;
    std::optional<Config> next;
    std::optional<Fault> fault;
};

/// One transition from `config`. Terminal iff the command is done. Throws
/// Error("unknown-label") if the label is not in the program.
StepResult step(const Program& program, const Config& config);

enum class Outcome { Done, Stuck, Overflow, BudgetExhausted };
std::string toString(Outcome outcome);

struct Trace {
    std::vector<Config> configs;
    Outcome outcome = Outcome::Done;
    std::optional<Label> faultLabel;
    std::optional<Fault> fault;

    std::size_t transitions() const { return configs.empty() ? 0 : configs.size() - 1; }
    const State& finalState() const { return configs.back().state; }
};

inline constexpr std::size_t defaultMaxSteps = 100000;

/// Runs from <first, {}>. Throws Error("invalid-program") if validate fails.
Trace run(const Program& program, std::size_t maxSteps = defaultMaxSteps);

std::string toString(const State& state);
/// Line-per-configuration rendering followed by the outcome line.
std::string traceToText(const Trace& trace);
std::string outcomeMessage(const Trace& trace);

} // namespace dfa
