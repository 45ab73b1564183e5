// Seeded random program generation and the property suite that runs every
// solver, metatheory and optimizer check over a corpus of programs.
#pragma once

#include "dfa/analyses.hpp"
#include "dfa/ast.hpp"
#include "dfa/interp.hpp"
#include "dfa/solver.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dfa {

struct GenConfig {
    std::uint64_t seed = 0;
    int maxCommands = 20; // body commands before the final halt; done
    int maxVars = 3;
    std::int64_t literalMin = -10;
    std::int64_t literalMax = 10;
    double branchProb = 0.3;
    double gotoProb = 0.1;
    int maxExprDepth = 2;

    /// Throws Error("invalid-config") on non-positive bounds or bad probabilities.
    void check() const;
};

/// A validate-clean program ending in halt; done. Same config, same program.
Program generate(const GenConfig& config);

/// Programs for seeds base, base+1, ..., base+count-1.
std::vector<Program> generateCorpus(GenConfig config, std::size_t count);

struct CheckOutcome {
    enum class Status { Pass, Fail, Skip };
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

struct ProgramReport {
    std::size_t index = 0;
    std::string source;
    std::vector<CheckOutcome> checks;
    std::optional<std::string> shrunk; // minimal failing program, when a check failed

    bool passed() const;
};

struct SuiteReport {
    std::vector<ProgramReport> programs;
    std::vector<std::string> checkNames; // in report order

    std::size_t failingPrograms() const;
    bool passed() const { return failingPrograms() == 0; }
    /// Per-check pass/fail/skip counts followed by each failing program.
    std::string toTable() const;
};

/// Lets tests corrupt a solved result before it is checked.
using ResultTamper = std::function<void(std::size_t programIndex, AnalysisKind kind, const Program& program,
                                        AnalysisResult& result)>;

struct SuiteOptions {
    std::size_t maxSteps = 10000;
    bool shrink = true;
    ResultTamper tamper;
};

/// All checks on one program.
std::vector<CheckOutcome> checkProgram(const Program& program, std::size_t index, const SuiteOptions& options);

SuiteReport runSuite(const std::vector<Program>& programs, const SuiteOptions& options = {});

/// Greedy one pass: each body command is replaced by skip if `fails` still holds.
Program shrinkProgram(const Program& program, const std::function<bool(const Program&)>& fails);

} // namespace dfa
