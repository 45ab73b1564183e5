// The four concrete analyses: live variables, very busy expressions, defined
// variables and reaching definitions.
#pragma once

#include "dfa/ast.hpp"
#include "dfa/lattice.hpp"
#include "dfa/solver.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dfa {

enum class AnalysisKind { LiveVariables, VeryBusy, DefinedVariables, ReachingDefinitions };

inline constexpr AnalysisKind allAnalysisKinds[] = {
    AnalysisKind::LiveVariables,
    AnalysisKind::VeryBusy,
    AnalysisKind::DefinedVariables,
    AnalysisKind::ReachingDefinitions,
};

/// "live-vars", "very-busy", "defined-vars", "reaching-defs".
std::string toString(AnalysisKind kind);
/// "lv", "vbe", "dv", "rd".
std::string shortName(AnalysisKind kind);
/// Accepts either spelling.
std::optional<AnalysisKind> parseAnalysisKind(const std::string& name);

Direction directionOf(AnalysisKind kind);
LatticeOrder orderOf(AnalysisKind kind);
/// Prophecy analyses predict the future (LV, VBE); the others record history.
bool isProphecy(AnalysisKind kind);

/// Variables of the program, its subexpressions, or (variable, label) pairs.
UniversePtr universeFor(AnalysisKind kind, const Program& program);

// Transfer functions, written directly from their set formulas. `i` is the
// command index; β must come from universeFor(kind, program).
Fact transferLV(const Program& program, std::size_t i, const Fact& beta);
Fact transferVBE(const Program& program, std::size_t i, const Fact& beta);
Fact transferDV(const Program& program, std::size_t i, const Fact& beta);
Fact transferRD(const Program& program, std::size_t i, const Fact& beta);
Fact transfer(AnalysisKind kind, const Program& program, std::size_t i, const Fact& beta);

/// Per-command kill (D) and gen (U) sets: f(l, β) = (β − D) ∪ U. For VBE, D is
/// every universe expression reading the assigned variable, which gives the
/// same result as restricting it to β.
struct GenKill {
    Fact kill;
    Fact gen;
};
GenKill genKill(AnalysisKind kind, const Program& program, const UniversePtr& universe, std::size_t i);

/// The equation system for `kind`. `observe` extends LV's exit boundary and is
/// ignored by the other analyses. Throws Error("unknown-observe-variable").
AnalysisSpec makeSpec(AnalysisKind kind, const Program& program, const std::set<std::string>& observe = {});

AnalysisResult analyze(AnalysisKind kind, const Program& program, const std::set<std::string>& observe = {});

/// Labels l:c where variables(c) ⊄ LV-before(l).
std::vector<Label> liveReadViolations(const Program& program, const AnalysisResult& lv);

struct VbeKillViolation {
    Label label;
    AExp expression;
};
/// Assignments l: v := e with some e′ ∈ VBE-before(l), v ∈ variables(e′), e′ ∉ subexpressions(e).
std::vector<VbeKillViolation> vbeKillViolations(const Program& program, const AnalysisResult& vbe);

/// Labels not reachable from first along successors.
std::vector<Label> unreachableLabels(const Program& program);

} // namespace dfa
