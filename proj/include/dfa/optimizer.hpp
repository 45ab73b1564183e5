// Analysis-justified rewrites: dead-store elimination (live + defined
// variables) and constant propagation (reaching definitions + defined
// variables), with differential execution against the original program.
#pragma once

#include "dfa/ast.hpp"
#include "dfa/interp.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dfa {

struct RewriteEntry {
    Label label;
    std::string kind; // "dead-store" or "constant"
    std::string before;
    std::string after;
    std::vector<std::string> justification;
};

struct RewriteLog {
    std::vector<RewriteEntry> entries;

    std::string toText() const;
};

struct OptimizationResult {
    Program program;
    RewriteLog log;
};

/// Replaces l: v := e with skip while v ∉ live-after(l) and
/// variables(e) ⊆ defined-before(l), re-solving until nothing changes.
/// Observed variables that do not occur in the program are ignored.
OptimizationResult deadStoreElim(const Program& program, const std::set<std::string>& observe = {});

/// Replaces reads of v at l by n when v is defined before l and every
/// reaching definition of v is "g: v := n" for the same n; repeats to a fixpoint.
OptimizationResult constProp(const Program& program);

AExp substitute(const AExp& e, const std::map<std::string, std::int64_t>& values);
BExp substitute(const BExp& b, const std::map<std::string, std::int64_t>& values);

struct DiffVerdict {
    enum class Kind { Same, Different, Inconclusive };
    Kind kind = Kind::Same;
    std::string detail;

    bool ok() const { return kind != Kind::Different; }
};

/// Runs both programs with the same budget. Outcome classes and stuck labels
/// must agree; for done runs the final states must agree on `observe`, or on
/// every variable when `observe` is absent. An original run that overflows
/// makes the comparison inconclusive.
DiffVerdict compareRuns(const Program& original, const Program& transformed, std::size_t maxSteps,
                        const std::optional<std::set<std::string>>& observe);

} // namespace dfa
