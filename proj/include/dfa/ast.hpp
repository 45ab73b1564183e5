// Abstract syntax for the core imperative language: expressions, labeled
// commands, programs and the structural queries (read variables,
// subexpressions, control-flow successors/predecessors) used by the analyses.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dfa {

/// Base class for contract violations raised by the library (unknown labels,
/// mismatched lattice universes, bad CLI configuration, ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct Label {
    std::string name;

    friend auto operator<=>(const Label&, const Label&) = default;
    friend bool operator==(const Label&, const Label&) = default;
};

enum class ArithOp { Plus, Minus, Times };
enum class CompareOp { Eq, Leq };

/// Immutable arithmetic expression tree. Copies share structure; equality and
/// ordering are structural.
class AExp {
public:
    enum class Kind { Literal, Variable, Binary };

    static AExp literal(std::int64_t value);
    static AExp variable(std::string name);
    static AExp binary(ArithOp op, AExp lhs, AExp rhs);

    Kind kind() const;
    std::int64_t value() const;
    const std::string& name() const;
    ArithOp op() const;
    AExp lhs() const;
    AExp rhs() const;

    friend bool operator==(const AExp& a, const AExp& b);
    friend std::strong_ordering operator<=>(const AExp& a, const AExp& b);

    struct Node;

private:
    explicit AExp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

class BExp {
public:
    enum class Kind { True, False, Compare, Not, And, Or };

    static BExp truth(bool value);
    static BExp compare(CompareOp op, AExp left, AExp right);
    static BExp negation(BExp operand);
    static BExp conjunction(BExp first, BExp second);
    static BExp disjunction(BExp first, BExp second);

    Kind kind() const;
    CompareOp compareOp() const;
    AExp left() const;
    AExp right() const;
    BExp operand() const;
    BExp first() const;
    BExp second() const;

    friend bool operator==(const BExp& a, const BExp& b);

    struct Node;

private:
    explicit BExp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Skip {
    bool operator==(const Skip&) const = default;
};
struct Assign {
    std::string variable;
    AExp expr;
    bool operator==(const Assign&) const = default;
};
struct Branch {
    BExp cond;
    Label target;
    bool operator==(const Branch&) const = default;
};
struct Goto {
    Label target;
    bool operator==(const Goto&) const = default;
};
struct Halt {
    bool operator==(const Halt&) const = default;
};
struct Done {
    bool operator==(const Done&) const = default;
};

using Command = std::variant<Skip, Assign, Branch, Goto, Halt, Done>;

struct LabeledCommand {
    Label label;
    Command command;
    bool operator==(const LabeledCommand&) const = default;
};

/// An ordered sequence of labeled commands. Control-flow maps are derived on
/// construction and are only meaningful once validate() reports no errors;
/// unresolved targets are simply left out of the successor sets.
class Program {
public:
    Program() = default;
    explicit Program(std::vector<LabeledCommand> commands);

    const std::vector<LabeledCommand>& commands() const { return commands_; }
    std::size_t size() const { return commands_.size(); }
    const Label& label(std::size_t i) const { return commands_.at(i).label; }
    const Command& command(std::size_t i) const { return commands_.at(i).command; }

    std::optional<std::size_t> indexOf(const Label& label) const;
    std::size_t at(const Label& label) const; // throws unknown-label
    std::size_t first() const { return 0; }
    std::optional<std::size_t> next(std::size_t i) const;

    /// Successor / predecessor label indices, ascending and duplicate-free.
    const std::vector<std::size_t>& successors(std::size_t i) const { return succ_.at(i); }
    const std::vector<std::size_t>& predecessors(std::size_t i) const { return pred_.at(i); }

    std::vector<Label> labels() const;

    bool operator==(const Program& other) const { return commands_ == other.commands_; }

private:
    std::vector<LabeledCommand> commands_;
    std::map<Label, std::size_t> index_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::vector<std::size_t>> pred_;
};

struct WellFormednessError {
    enum class Rule { DuplicateLabel, MissingTarget, HaltNotFollowedByDone, MissingTerminalDone, ExtraDone };

    Rule rule;
    Label label;
    std::optional<Label> target;
    std::size_t position = 0; // index of the offending command

    std::string ruleName() const;
    std::string message() const;
    bool operator==(const WellFormednessError&) const = default;
};

std::vector<WellFormednessError> validate(const Program& program);

// Variables read by an expression or command. An assignment's target is a
// write, so variables(v := e) == variables(e).
std::set<std::string> variables(const AExp& e);
std::set<std::string> variables(const BExp& b);
std::set<std::string> variables(const Command& c);
/// Every variable mentioned anywhere in the program, read or written.
std::set<std::string> variables(const Program& program);
std::optional<std::string> assignedVariable(const Command& c);

// Arithmetic subexpressions, literals and variables included. Boolean nodes are
// not arithmetic expressions, so a BExp contributes only its operands' trees.
std::set<AExp> subexpressions(const AExp& e);
std::set<AExp> subexpressions(const BExp& b);
std::set<AExp> subexpressions(const Command& c);
std::set<AExp> subexpressions(const Program& program);

std::set<Label> successors(const Program& program, const Label& label);
std::set<Label> predecessors(const Program& program, const Label& label);

std::string toString(ArithOp op);
std::string toString(const AExp& e);
std::string toString(const BExp& b);
std::string toString(const Command& c);

inline bool isDone(const Command& c) { return std::holds_alternative<Done>(c); }
inline bool isHalt(const Command& c) { return std::holds_alternative<Halt>(c); }

} // namespace dfa
