// Concrete text format for programs (.imp files): parsing with source spans
// and canonical pretty-printing.
#pragma once

#include "dfa/ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfa {

struct SourceSpan {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
    SourceSpan span;
    /// "lexical", "syntax", or the well-formedness rule name from validate().
    std::string kind;
    std::string message;
};

std::string formatError(const ParseError& error, std::string_view source = {});

struct ParseResult {
    std::optional<Program> program;
    std::vector<ParseError> errors;

    bool ok() const { return program.has_value(); }
};

ParseResult parse(std::string_view text);

/// Convenience wrapper that throws Error("parse-error") listing every error.
Program parseProgram(std::string_view text);

// Expression-level entry points, mainly for tests and the python bindings.
std::optional<AExp> parseAExp(std::string_view text, std::vector<ParseError>* errors = nullptr);
std::optional<BExp> parseBExp(std::string_view text, std::vector<ParseError>* errors = nullptr);

/// Canonical form: one "label: command" per line, LF terminated.
std::string print(const Program& program);

} // namespace dfa
