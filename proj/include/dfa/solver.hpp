// Generic worklist solver for forward and backward dataflow equation systems
// over the lattices in lattice.hpp, plus a post-hoc equation audit.
#pragma once

#include "dfa/ast.hpp"
#include "dfa/lattice.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dfa {

enum class Direction { Forward, Backward };

/// Forward:  before(l) = boundary(l) ⊔ ⊔{after(p) : p ∈ pred(l)},  after(l) = transfer(l, before(l))
/// Backward: after(l)  = boundary(l) ⊔ ⊔{before(s) : s ∈ succ(l)}, before(l) = transfer(l, after(l))
/// A label with no boundary and no neighbours gets `initial` (default: the
/// order's bottom) on its combined side.
struct AnalysisSpec {
    std::string name;
    Direction direction = Direction::Forward;
    LatticeOrder order = LatticeOrder::Subset;
    UniversePtr universe;
    std::map<std::size_t, Fact> boundary; // keyed by command index
    std::optional<Fact> initial;
    std::function<Fact(std::size_t, const Fact&)> transfer;
};

struct AnalysisResult {
    std::vector<Label> labels;
    std::vector<Fact> before;
    std::vector<Fact> after;

    std::size_t indexOf(const Label& label) const;
    const Fact& beforeAt(const Label& label) const { return before[indexOf(label)]; }
    const Fact& afterAt(const Label& label) const { return after[indexOf(label)]; }
};

enum class WorklistOrder { Fifo, Lifo };

/// Least solution reached by Kleene iteration from bottom. Throws
/// Error("non-monotone-transfer") if a relaxation moves a fact downwards and
/// Error("invalid-program") if the program does not validate.
AnalysisResult solve(const Program& program, const AnalysisSpec& spec, WorklistOrder order = WorklistOrder::Fifo);

struct EquationViolation {
    enum class Side { Before, After };
    Label label;
    Side side;
    Fact expected;
    Fact actual;

    std::string describe() const;
};

std::string toString(EquationViolation::Side side);

/// Every equation of the system evaluated against `result`'s own facts.
std::vector<EquationViolation> audit(const Program& program, const AnalysisSpec& spec, const AnalysisResult& result);

/// The combined-side fact the equations demand at index i given the other facts.
Fact combinedFact(const Program& program, const AnalysisSpec& spec, const AnalysisResult& result, std::size_t i);

} // namespace dfa
