// Augmented operational semantics <l, σ, π> ⇒ <l', σ', π'> for each analysis,
// prophecy/history policies, and executable checks of Preservation, Progress,
// the bisimulation corollary and the trace-level theorems.
#pragma once

#include "dfa/analyses.hpp"
#include "dfa/interp.hpp"
#include "dfa/lattice.hpp"
#include "dfa/solver.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dfa {

struct AugConfig {
    Label label;
    State state;
    Fact pi;

    Config projection() const { return {label, state}; }
    bool operator==(const AugConfig&) const = default;
};

enum class RefusalReason { ProphecyPreconditionViolated, PredictionInconsistent };
std::string toString(RefusalReason reason);

struct AugStepResult {
    enum class Status { Accepted, Refused, Stuck, Terminal };
    Status status;
    std::optional<AugConfig> next;
    std::optional<RefusalReason> reason;
    std::optional<Fault> fault; // standard stuckness
    std::string detail;
    /// For refusals: the facts the rule required (bound or read set) and what it got.
    std::vector<std::string> expected;
    std::vector<std::string> actual;

    bool accepted() const { return status == Status::Accepted; }
};

/// Applies `kind`'s augmented rule at c.label with the proposed next value π'.
/// With `metarule` the downward closure metarule is enabled for LV and VBE;
/// DV and RD always use the upward closure metarule.
AugStepResult augStep(AnalysisKind kind, const Program& program, const AugConfig& c, const Fact& proposed,
                      bool metarule = false);

/// π0: ∅ for DV, λv.∅ for RD. Prophecy analyses have no fixed initial value.
std::optional<Fact> initialHistory(AnalysisKind kind, const UniversePtr& universe);

/// Chooses π' for the next label.
using Prediction = std::function<Fact(const Label& next)>;

/// π at l is the solved before(l).
Prediction analysisPolicy(const AnalysisResult& result);
/// π at l comes from a caller-supplied table; missing labels throw.
Prediction explicitPolicy(std::map<Label, Fact> table);

/// Every accepted successor of c, found by trying every fact in the universe.
/// Throws Error("universe-too-large") when the universe exceeds maxBits.
std::vector<AugConfig> enumerateSuccessors(AnalysisKind kind, const Program& program, const AugConfig& c,
                                           bool metarule = false, std::size_t maxBits = 12);

struct AugTrace {
    enum class Outcome { Done, Stuck, Refused, BudgetExhausted };
    std::vector<AugConfig> configs;
    Outcome outcome = Outcome::Done;
    std::string detail;
};
std::string toString(AugTrace::Outcome outcome);

AugTrace runAugmented(AnalysisKind kind, const Program& program, const Fact& pi0, const Prediction& predict,
                      bool metarule = false, std::size_t maxSteps = defaultMaxSteps);

struct CheckFailure {
    std::size_t step = 0;
    Label label;
    std::string rule;
    std::string detail;
    std::vector<std::string> expected;
    std::vector<std::string> actual;

    std::string describe() const;
};

struct CheckReport {
    std::vector<CheckFailure> failures;
    std::vector<std::string> notes; // informational, e.g. budget exhaustion
    std::size_t stepsChecked = 0;

    bool passed() const { return failures.empty(); }
    void merge(const CheckReport& other);
    std::string toText() const;
};

/// Each consecutive pair of configurations must be a standard step once π is
/// projected away.
CheckReport checkPreservation(const Program& program, const std::vector<AugConfig>& trace);

/// Runs the standard interpreter and checks that every step
/// <l,σ> → <l',σ'> is matched by <l,σ,before(l)> ⇒ <l',σ',before(l')>.
/// History analyses additionally check π0 ≤ before(first).
CheckReport checkProgress(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                          std::size_t maxSteps = defaultMaxSteps, bool metarule = false);
CheckReport checkProgress(AnalysisKind kind, const Program& program, const AnalysisResult& result, const Trace& trace,
                          bool metarule = false);

/// The analysis's trace theorem evaluated along a standard trace.
CheckReport checkTraceTheorems(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                               const Trace& trace);

/// Quadratic restatements of the LV and VBE trace theorems, used to cross-check
/// the linear-time versions.
CheckReport checkTraceTheoremsNaive(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                                    const Trace& trace);

/// Per-step invariants of accepted augmented traces: LV reads lie in π and
/// only an assignment to v may add v; VBE drops only evaluated expressions;
/// DV keeps π ⊆ dom(σ); RD records a provenance label for each defined value.
CheckReport checkAugmentedInvariants(AnalysisKind kind, const Program& program, const std::vector<AugConfig>& trace);

/// Both directions of <l,σ> ~ <l,σ,before(l)> on every configuration of the
/// standard trace: the analysis successor is accepted, and every accepted
/// augmented successor projects onto the standard successor.
CheckReport checkBisimulation(AnalysisKind kind, const Program& program, const AnalysisResult& result,
                              std::size_t maxSteps = 200, bool metarule = false, std::size_t maxBits = 12);

} // namespace dfa
