// Reference implementations used to cross-check the library. Each analysis is
// restated as a path property over the control-flow graph and answered by
// graph search, without any fixpoint iteration. Leastness is checked by
// enumerating candidate solutions of the equation system.
#pragma once

#include "dfa/analyses.hpp"
#include "dfa/solver.hpp"

#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using dfa::AExp;
using dfa::Program;

inline bool assigns(const Program& p, std::size_t i, const std::string& v)
{
    auto target = dfa::assignedVariable(p.command(i));
    return target && *target == v;
}

inline bool reads(const Program& p, std::size_t i, const std::string& v)
{
    return dfa::variables(p.command(i)).count(v) > 0;
}

inline bool isExit(const Program& p, std::size_t i)
{
    return dfa::isHalt(p.command(i)) || dfa::isDone(p.command(i));
}

/// v is live before l iff some path from l reaches a read of v, or an exit
/// with v observed, without first passing an assignment to v.
inline bool liveBefore(const Program& p, std::size_t l, const std::string& v, const std::set<std::string>& observe)
{
    std::vector<bool> seen(p.size(), false);
    std::deque<std::size_t> work{l};
    seen[l] = true;
    while (!work.empty()) {
        const std::size_t n = work.front();
        work.pop_front();
        if (reads(p, n, v))
            return true;
        if (isExit(p, n) && observe.count(v))
            return true;
        if (assigns(p, n, v))
            continue;
        for (std::size_t s : p.successors(n))
            if (!seen[s]) {
                seen[s] = true;
                work.push_back(s);
            }
    }
    return false;
}

/// v is defined before l iff no path from first reaches l while avoiding
/// every assignment to v. Unreachable labels are vacuously defined.
inline bool definedBefore(const Program& p, std::size_t l, const std::string& v)
{
    std::vector<bool> seen(p.size(), false);
    std::deque<std::size_t> work{p.first()};
    seen[p.first()] = true;
    while (!work.empty()) {
        const std::size_t n = work.front();
        work.pop_front();
        if (n == l)
            return false;
        if (assigns(p, n, v))
            continue;
        for (std::size_t s : p.successors(n))
            if (!seen[s]) {
                seen[s] = true;
                work.push_back(s);
            }
    }
    return true;
}

/// The assignment at g reaches l iff some path from g's successors arrives at
/// l with no assignment to v strictly in between.
inline bool reaches(const Program& p, std::size_t g, std::size_t l, const std::string& v)
{
    if (!assigns(p, g, v))
        return false;
    std::vector<bool> seen(p.size(), false);
    std::deque<std::size_t> work;
    for (std::size_t s : p.successors(g)) {
        seen[s] = true;
        work.push_back(s);
    }
    while (!work.empty()) {
        const std::size_t n = work.front();
        work.pop_front();
        if (n == l)
            return true;
        if (assigns(p, n, v))
            continue;
        for (std::size_t s : p.successors(n))
            if (!seen[s]) {
                seen[s] = true;
                work.push_back(s);
            }
    }
    return false;
}

/// e is very busy before l iff every path from l evaluates e before any
/// assignment to one of e's variables and before reaching done. Paths that
/// never reach done are vacuous.
inline bool busyBefore(const Program& p, std::size_t l, const AExp& e)
{
    const auto eVars = dfa::variables(e);
    std::vector<bool> seen(p.size(), false);
    std::deque<std::size_t> work{l};
    seen[l] = true;
    while (!work.empty()) {
        const std::size_t n = work.front();
        work.pop_front();
        if (dfa::subexpressions(p.command(n)).count(e))
            continue;
        auto target = dfa::assignedVariable(p.command(n));
        if (target && eVars.count(*target))
            return false;
        if (dfa::isDone(p.command(n)))
            return false;
        for (std::size_t s : p.successors(n))
            if (!seen[s]) {
                seen[s] = true;
                work.push_back(s);
            }
    }
    return true;
}

/// Expected before-fact of `kind` at every label.
inline std::vector<dfa::Fact> expectedBefore(dfa::AnalysisKind kind, const Program& p,
                                             const std::set<std::string>& observe = {})
{
    using K = dfa::AnalysisKind;
    const auto universe = dfa::universeFor(kind, p);
    const auto order = dfa::orderOf(kind);
    std::vector<dfa::Fact> out;
    for (std::size_t l = 0; l < p.size(); ++l) {
        dfa::Fact f = dfa::Fact::empty(universe, order);
        switch (kind) {
        case K::LiveVariables:
            for (const auto& v : universe->variableNames())
                if (liveBefore(p, l, v, observe))
                    f.insertVariable(v);
            break;
        case K::DefinedVariables:
            for (const auto& v : universe->variableNames())
                if (definedBefore(p, l, v))
                    f.insertVariable(v);
            break;
        case K::VeryBusy:
            for (const auto& e : universe->expressions())
                if (busyBefore(p, l, e))
                    f.insertExpression(e);
            break;
        case K::ReachingDefinitions:
            for (std::size_t vi = 0; vi < universe->variableNames().size(); ++vi)
                for (std::size_t g = 0; g < p.size(); ++g)
                    if (reaches(p, g, l, universe->variableNames()[vi]))
                        f.bits().set(universe->definitionIndex(vi, *universe->labelIndex(p.label(g))));
            break;
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// True iff `candidate` (one fact per label on the transferred side) solves
/// the system: the combined side recomputed from it, transferred, gives it back.
inline bool isSolution(const Program& p, const dfa::AnalysisSpec& spec, const std::vector<dfa::Fact>& candidate)
{
    dfa::AnalysisResult r;
    r.labels = p.labels();
    for (std::size_t i = 0; i < p.size(); ++i) {
        r.before.push_back(candidate[i]);
        r.after.push_back(candidate[i]);
    }
    // Transferred side: before for backward, after for forward. Place the
    // candidate there and derive the combined side from the neighbours.
    auto& transferred = spec.direction == dfa::Direction::Forward ? r.after : r.before;
    auto& combined = spec.direction == dfa::Direction::Forward ? r.before : r.after;
    transferred = candidate;
    for (std::size_t i = 0; i < p.size(); ++i)
        combined[i] = dfa::combinedFact(p, spec, r, i);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!(spec.transfer(i, combined[i]) == transferred[i]))
            return false;
    return true;
}

struct LeastnessResult {
    bool solverIsSolution = false;
    bool solverIsLeast = false;
    std::size_t solutionsFound = 0;
    std::string method;
};

/// Enumerates candidate assignments of the transferred side. When the joint
/// space is small every assignment is tried; otherwise the system is split per
/// atom, which is exact for gen/kill transfers because each bit of the result
/// depends only on the same bit of the inputs.
inline LeastnessResult checkLeastness(const Program& p, const dfa::AnalysisSpec& spec,
                                      const dfa::AnalysisResult& solved, std::size_t jointLimitBits = 20)
{
    LeastnessResult out;
    const std::size_t n = p.size();
    const std::size_t width = spec.universe->size();
    const auto& solvedTransferred = spec.direction == dfa::Direction::Forward ? solved.after : solved.before;

    // In the facts' order, "a ≤ b" for reverse-subset means a ⊇ b.
    auto below = [&](const dfa::Fact& a, const dfa::Fact& b) { return dfa::leq(a, b); };

    out.solverIsSolution = isSolution(p, spec, solvedTransferred);
    out.solverIsLeast = out.solverIsSolution;

    if (width * n <= jointLimitBits) {
        out.method = "joint";
        const std::uint64_t total = std::uint64_t{1} << (width * n);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<dfa::Fact> candidate;
            for (std::size_t i = 0; i < n; ++i) {
                dfa::Fact::Bits bits(width);
                for (std::size_t b = 0; b < width; ++b)
                    bits[b] = (code >> (i * width + b)) & 1U;
                candidate.emplace_back(spec.universe, spec.order, bits);
            }
            if (!isSolution(p, spec, candidate))
                continue;
            ++out.solutionsFound;
            for (std::size_t i = 0; i < n; ++i)
                if (!below(solvedTransferred[i], candidate[i]))
                    out.solverIsLeast = false;
        }
        return out;
    }

    out.method = "per-atom";
    if (n > 20)
        throw std::invalid_argument("too many labels for per-atom enumeration");
    // Per atom: fix every other bit to the solver's value and enumerate the
    // n bits of this atom. Any solution of the full system restricts to a
    // solution here, so the solver's bit must be least among them.
    for (std::size_t b = 0; b < width; ++b) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<dfa::Fact> candidate = solvedTransferred;
            for (std::size_t i = 0; i < n; ++i)
                candidate[i].bits()[b] = (code >> i) & 1U;
            if (!isSolution(p, spec, candidate))
                continue;
            ++out.solutionsFound;
            for (std::size_t i = 0; i < n; ++i)
                if (!below(solvedTransferred[i], candidate[i]))
                    out.solverIsLeast = false;
        }
    }
    return out;
}

} // namespace oracle
