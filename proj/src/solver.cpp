#include "dfa/solver.hpp"

#include <deque>

namespace dfa {

std::size_t AnalysisResult::indexOf(const Label& label) const
{
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return i;
    throw Error("unknown-label", "unknown label '" + label.name + "'");
}

std::string toString(EquationViolation::Side side)
{
    return side == EquationViolation::Side::Before ? "before" : "after";
}

std::string EquationViolation::describe() const
{
    return label.name + ": " + toString(side) + " expected " + expected.toString() + " but found " +
           actual.toString();
}

namespace {

Fact initialFact(const AnalysisSpec& spec)
{
    return spec.initial ? *spec.initial : Fact::bottom(spec.universe, spec.order);
}

/// Combined side computed from the neighbours' transferred sides.
Fact combine(const Program& program, const AnalysisSpec& spec, const std::vector<Fact>& transferred, std::size_t i)
{
    const auto& neighbours =
        spec.direction == Direction::Forward ? program.predecessors(i) : program.successors(i);
    std::optional<Fact> acc;
    if (auto it = spec.boundary.find(i); it != spec.boundary.end())
        acc = it->second;
    for (std::size_t n : neighbours)
        acc = acc ? join(*acc, transferred[n]) : transferred[n];
    return acc ? *acc : initialFact(spec);
}

} // namespace

Fact combinedFact(const Program& program, const AnalysisSpec& spec, const AnalysisResult& result, std::size_t i)
{
    const auto& transferred = spec.direction == Direction::Forward ? result.after : result.before;
    return combine(program, spec, transferred, i);
}

AnalysisResult solve(const Program& program, const AnalysisSpec& spec, WorklistOrder order)
{
    if (auto errors = validate(program); !errors.empty())
        throw Error("invalid-program", errors.front().message());
    const std::size_t n = program.size();
    const Fact bottom = Fact::bottom(spec.universe, spec.order);

    // `out` is the transferred side: after for forward, before for backward.
    std::vector<Fact> out(n, bottom);
    std::deque<std::size_t> work;
    std::vector<bool> queued(n, true);
    for (std::size_t i = 0; i < n; ++i)
        work.push_back(i);

    while (!work.empty()) {
        std::size_t i;
        if (order == WorklistOrder::Fifo) {
            i = work.front();
            work.pop_front();
        } else {
            i = work.back();
            work.pop_back();
        }
        queued[i] = false;
        Fact updated = spec.transfer(i, combine(program, spec, out, i));
        if (updated == out[i])
            continue;
        if (!leq(out[i], updated))
            throw Error("non-monotone-transfer", spec.name + " transfer at " + program.label(i).name +
                                                     " moved from " + out[i].toString() + " to " + updated.toString());
        out[i] = std::move(updated);
        const auto& dependents =
            spec.direction == Direction::Forward ? program.successors(i) : program.predecessors(i);
        for (std::size_t d : dependents) {
            if (!queued[d]) {
                queued[d] = true;
                work.push_back(d);
            }
        }
    }

    AnalysisResult result{program.labels(), {}, {}};
    std::vector<Fact> in;
    in.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        in.push_back(combine(program, spec, out, i));
    if (spec.direction == Direction::Forward) {
        result.before = std::move(in);
        result.after = std::move(out);
    } else {
        result.before = std::move(out);
        result.after = std::move(in);
    }
    return result;
}

std::vector<EquationViolation> audit(const Program& program, const AnalysisSpec& spec, const AnalysisResult& result)
{
    using Side = EquationViolation::Side;
    std::vector<EquationViolation> violations;
    const std::size_t n = program.size();
    if (result.before.size() != n || result.after.size() != n)
        throw Error("result-mismatch", "analysis result does not cover every label of the program");

    const bool forward = spec.direction == Direction::Forward;
    for (std::size_t i = 0; i < n; ++i) {
        const Label& label = program.label(i);
        const Fact& combinedSide = forward ? result.before[i] : result.after[i];
        const Fact& transferredSide = forward ? result.after[i] : result.before[i];
        const Side combinedName = forward ? Side::Before : Side::After;
        const Side transferredName = forward ? Side::After : Side::Before;

        Fact expectedCombined = combinedFact(program, spec, result, i);
        if (!(expectedCombined == combinedSide))
            violations.push_back({label, combinedName, expectedCombined, combinedSide});
        Fact expectedTransferred = spec.transfer(i, combinedSide);
        if (!(expectedTransferred == transferredSide))
            violations.push_back({label, transferredName, expectedTransferred, transferredSide});
    }
    return violations;
}

} // namespace dfa
