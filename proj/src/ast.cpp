#include "dfa/ast.hpp"

#include <algorithm>
#include <utility>

namespace dfa {

struct AExp::Node {
    Kind kind;
    std::int64_t value = 0;
    std::string name;
    ArithOp op = ArithOp::Plus;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

AExp AExp::literal(std::int64_t value)
{
    return AExp(std::make_shared<const Node>(Node{Kind::Literal, value, {}, ArithOp::Plus, nullptr, nullptr}));
}

AExp AExp::variable(std::string name)
{
    return AExp(std::make_shared<const Node>(Node{Kind::Variable, 0, std::move(name), ArithOp::Plus, nullptr, nullptr}));
}

AExp AExp::binary(ArithOp op, AExp lhs, AExp rhs)
{
    return AExp(std::make_shared<const Node>(Node{Kind::Binary, 0, {}, op, std::move(lhs.node_), std::move(rhs.node_)}));
}

AExp::Kind AExp::kind() const { return node_->kind; }
std::int64_t AExp::value() const { return node_->value; }
const std::string& AExp::name() const { return node_->name; }
ArithOp AExp::op() const { return node_->op; }
AExp AExp::lhs() const { return AExp(node_->lhs); }
AExp AExp::rhs() const { return AExp(node_->rhs); }

namespace {

std::strong_ordering compareNodes(const AExp::Node* a, const AExp::Node* b)
{
    if (a == b)
        return std::strong_ordering::equal;
    if (auto c = a->kind <=> b->kind; c != 0)
        return c;
    switch (a->kind) {
    case AExp::Kind::Literal:
        return a->value <=> b->value;
    case AExp::Kind::Variable:
        return a->name <=> b->name;
    case AExp::Kind::Binary:
        if (auto c = a->op <=> b->op; c != 0)
            return c;
        if (auto c = compareNodes(a->lhs.get(), b->lhs.get()); c != 0)
            return c;
        return compareNodes(a->rhs.get(), b->rhs.get());
    }
    return std::strong_ordering::equal;
}

} // namespace

bool operator==(const AExp& a, const AExp& b)
{
    return compareNodes(a.node_.get(), b.node_.get()) == 0;
}

std::strong_ordering operator<=>(const AExp& a, const AExp& b)
{
    return compareNodes(a.node_.get(), b.node_.get());
}

struct BExp::Node {
    Kind kind;
    CompareOp cmp = CompareOp::Eq;
    std::optional<AExp> left;
    std::optional<AExp> right;
    std::shared_ptr<const Node> first;
    std::shared_ptr<const Node> second;
};

BExp BExp::truth(bool value)
{
    return BExp(std::make_shared<const Node>(Node{value ? Kind::True : Kind::False, CompareOp::Eq, {}, {}, nullptr, nullptr}));
}

BExp BExp::compare(CompareOp op, AExp left, AExp right)
{
    return BExp(std::make_shared<const Node>(Node{Kind::Compare, op, std::move(left), std::move(right), nullptr, nullptr}));
}

BExp BExp::negation(BExp operand)
{
    return BExp(std::make_shared<const Node>(Node{Kind::Not, CompareOp::Eq, {}, {}, std::move(operand.node_), nullptr}));
}

BExp BExp::conjunction(BExp first, BExp second)
{
    return BExp(std::make_shared<const Node>(
        Node{Kind::And, CompareOp::Eq, {}, {}, std::move(first.node_), std::move(second.node_)}));
}

BExp BExp::disjunction(BExp first, BExp second)
{
    return BExp(std::make_shared<const Node>(
        Node{Kind::Or, CompareOp::Eq, {}, {}, std::move(first.node_), std::move(second.node_)}));
}

BExp::Kind BExp::kind() const { return node_->kind; }
CompareOp BExp::compareOp() const { return node_->cmp; }
AExp BExp::left() const { return *node_->left; }
AExp BExp::right() const { return *node_->right; }
BExp BExp::operand() const { return BExp(node_->first); }
BExp BExp::first() const { return BExp(node_->first); }
BExp BExp::second() const { return BExp(node_->second); }

bool operator==(const BExp& a, const BExp& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case BExp::Kind::True:
    case BExp::Kind::False:
        return true;
    case BExp::Kind::Compare:
        return a.compareOp() == b.compareOp() && a.left() == b.left() && a.right() == b.right();
    case BExp::Kind::Not:
        return a.operand() == b.operand();
    case BExp::Kind::And:
    case BExp::Kind::Or:
        return a.first() == b.first() && a.second() == b.second();
    }
    return false;
}

// --- Program ---------------------------------------------------------------

Program::Program(std::vector<LabeledCommand> commands) : commands_(std::move(commands))
{
    const std::size_t n = commands_.size();
    for (std::size_t i = 0; i < n; ++i)
        index_.emplace(commands_[i].label, i); // first occurrence wins

    succ_.assign(n, {});
    pred_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        auto& out = succ_[i];
        auto addNext = [&] {
            if (i + 1 < n)
                out.push_back(i + 1);
        };
        auto addTarget = [&](const Label& target) {
            if (auto it = index_.find(target); it != index_.end())
                out.push_back(it->second);
        };
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Assign> || std::is_same_v<T, Skip> || std::is_same_v<T, Halt>) {
                    addNext();
                } else if constexpr (std::is_same_v<T, Goto>) {
                    addTarget(c.target);
                } else if constexpr (std::is_same_v<T, Branch>) {
                    addNext();
                    addTarget(c.target);
                }
            },
            commands_[i].command);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (std::size_t s : out)
            pred_[s].push_back(i);
    }
}

std::optional<std::size_t> Program::indexOf(const Label& label) const
{
    if (auto it = index_.find(label); it != index_.end())
        return it->second;
    return std::nullopt;
}

std::size_t Program::at(const Label& label) const
{
    if (auto i = indexOf(label))
        return *i;
    throw Error("unknown-label", "unknown label '" + label.name + "'");
}

std::optional<std::size_t> Program::next(std::size_t i) const
{
    if (i + 1 < commands_.size())
        return i + 1;
    return std::nullopt;
}

std::vector<Label> Program::labels() const
{
    std::vector<Label> out;
    out.reserve(commands_.size());
    for (const auto& lc : commands_)
        out.push_back(lc.label);
    return out;
}

std::string WellFormednessError::ruleName() const
{
    switch (rule) {
    case Rule::DuplicateLabel:
        return "duplicate-label";
    case Rule::MissingTarget:
        return "missing-target";
    case Rule::HaltNotFollowedByDone:
        return "halt-not-followed-by-done";
    case Rule::MissingTerminalDone:
        return "missing-terminal-done";
    case Rule::ExtraDone:
        return "extra-done";
    }
    return "unknown";
}

std::string WellFormednessError::message() const
{
    switch (rule) {
    case Rule::DuplicateLabel:
        return "duplicate label " + label.name;
    case Rule::MissingTarget:
        return "label " + label.name + " jumps to undefined label " + (target ? target->name : "?");
    case Rule::HaltNotFollowedByDone:
        return "halt at " + label.name + " is not immediately followed by done";
    case Rule::MissingTerminalDone:
        return label.name.empty() ? "program is empty; it must end with done"
                                  : "last command " + label.name + " is not done";
    case Rule::ExtraDone:
        return "done at " + label.name + " is not the final command";
    }
    return "";
}

std::vector<WellFormednessError> validate(const Program& program)
{
    using Rule = WellFormednessError::Rule;
    std::vector<WellFormednessError> errors;
    const auto& cmds = program.commands();
    std::set<Label> seen;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (!seen.insert(cmds[i].label).second)
            errors.push_back({Rule::DuplicateLabel, cmds[i].label, std::nullopt, i});
    }
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        const auto& [label, cmd] = cmds[i];
        const Label* target = nullptr;
        if (const auto* g = std::get_if<Goto>(&cmd))
            target = &g->target;
        else if (const auto* b = std::get_if<Branch>(&cmd))
            target = &b->target;
        if (target && !seen.contains(*target))
            errors.push_back({Rule::MissingTarget, label, *target, i});
        if (isHalt(cmd) && (i + 1 >= cmds.size() || !isDone(cmds[i + 1].command)))
            errors.push_back({Rule::HaltNotFollowedByDone, label, std::nullopt, i});
        if (isDone(cmd) && i + 1 < cmds.size())
            errors.push_back({Rule::ExtraDone, label, std::nullopt, i});
    }
    if (cmds.empty())
        errors.push_back({Rule::MissingTerminalDone, Label{}, std::nullopt, 0});
    else if (!isDone(cmds.back().command))
        errors.push_back({Rule::MissingTerminalDone, cmds.back().label, std::nullopt, cmds.size() - 1});
    return errors;
}

// --- structural queries ----------------------------------------------------

namespace {

void collectVariables(const AExp& e, std::set<std::string>& out)
{
    switch (e.kind()) {
    case AExp::Kind::Literal:
        return;
    case AExp::Kind::Variable:
        out.insert(e.name());
        return;
    case AExp::Kind::Binary:
        collectVariables(e.lhs(), out);
        collectVariables(e.rhs(), out);
        return;
    }
}

void collectVariables(const BExp& b, std::set<std::string>& out)
{
    switch (b.kind()) {
    case BExp::Kind::True:
    case BExp::Kind::False:
        return;
    case BExp::Kind::Compare:
        collectVariables(b.left(), out);
        collectVariables(b.right(), out);
        return;
    case BExp::Kind::Not:
        collectVariables(b.operand(), out);
        return;
    case BExp::Kind::And:
    case BExp::Kind::Or:
        collectVariables(b.first(), out);
        collectVariables(b.second(), out);
        return;
    }
}

void collectSubexpressions(const AExp& e, std::set<AExp>& out)
{
    out.insert(e);
    if (e.kind() == AExp::Kind::Binary) {
        collectSubexpressions(e.lhs(), out);
        collectSubexpressions(e.rhs(), out);
    }
}

void collectSubexpressions(const BExp& b, std::set<AExp>& out)
{
    switch (b.kind()) {
    case BExp::Kind::True:
    case BExp::Kind::False:
        return;
    case BExp::Kind::Compare:
        collectSubexpressions(b.left(), out);
        collectSubexpressions(b.right(), out);
        return;
    case BExp::Kind::Not:
        collectSubexpressions(b.operand(), out);
        return;
    case BExp::Kind::And:
    case BExp::Kind::Or:
        collectSubexpressions(b.first(), out);
        collectSubexpressions(b.second(), out);
        return;
    }
}

} // namespace

std::set<std::string> variables(const AExp& e)
{
    std::set<std::string> out;
    collectVariables(e, out);
    return out;
}

std::set<std::string> variables(const BExp& b)
{
    std::set<std::string> out;
    collectVariables(b, out);
    return out;
}

std::set<std::string> variables(const Command& c)
{
    if (const auto* a = std::get_if<Assign>(&c))
        return variables(a->expr);
    if (const auto* br = std::get_if<Branch>(&c))
        return variables(br->cond);
    return {};
}

std::set<std::string> variables(const Program& program)
{
    std::set<std::string> out;
    for (const auto& lc : program.commands()) {
        if (const auto* a = std::get_if<Assign>(&lc.command)) {
            out.insert(a->variable);
            collectVariables(a->expr, out);
        } else if (const auto* br = std::get_if<Branch>(&lc.command)) {
            collectVariables(br->cond, out);
        }
    }
    return out;
}

std::optional<std::string> assignedVariable(const Command& c)
{
    if (const auto* a = std::get_if<Assign>(&c))
        return a->variable;
    return std::nullopt;
}

std::set<AExp> subexpressions(const AExp& e)
{
    std::set<AExp> out;
    collectSubexpressions(e, out);
    return out;
}

std::set<AExp> subexpressions(const BExp& b)
{
    std::set<AExp> out;
    collectSubexpressions(b, out);
    return out;
}

std::set<AExp> subexpressions(const Command& c)
{
    if (const auto* a = std::get_if<Assign>(&c))
        return subexpressions(a->expr);
    if (const auto* br = std::get_if<Branch>(&c))
        return subexpressions(br->cond);
    return {};
}

std::set<AExp> subexpressions(const Program& program)
{
    std::set<AExp> out;
    for (const auto& lc : program.commands()) {
        if (const auto* a = std::get_if<Assign>(&lc.command))
            collectSubexpressions(a->expr, out);
        else if (const auto* br = std::get_if<Branch>(&lc.command))
            collectSubexpressions(br->cond, out);
    }
    return out;
}

std::set<Label> successors(const Program& program, const Label& label)
{
    std::set<Label> out;
    for (std::size_t s : program.successors(program.at(label)))
        out.insert(program.label(s));
    return out;
}

std::set<Label> predecessors(const Program& program, const Label& label)
{
    std::set<Label> out;
    for (std::size_t p : program.predecessors(program.at(label)))
        out.insert(program.label(p));
    return out;
}

// --- printing --------------------------------------------------------------

std::string toString(ArithOp op)
{
    switch (op) {
    case ArithOp::Plus:
        return "+";
    case ArithOp::Minus:
        return "-";
    case ArithOp::Times:
        return "*";
    }
    return "?";
}

namespace {

int precedence(const AExp& e)
{
    if (e.kind() != AExp::Kind::Binary)
        return 3;
    return e.op() == ArithOp::Times ? 2 : 1;
}

void print(const AExp& e, std::string& out)
{
    switch (e.kind()) {
    case AExp::Kind::Literal:
        out += std::to_string(e.value());
        return;
    case AExp::Kind::Variable:
        out += e.name();
        return;
    case AExp::Kind::Binary: {
        const int p = precedence(e);
        const AExp l = e.lhs();
        const AExp r = e.rhs();
        // Left-associative: a right operand of equal precedence needs parentheses.
        const bool parenL = precedence(l) < p;
        const bool parenR = precedence(r) <= p;
        if (parenL)
            out += '(';
        print(l, out);
        if (parenL)
            out += ')';
        out += ' ';
        out += toString(e.op());
        out += ' ';
        if (parenR)
            out += '(';
        print(r, out);
        if (parenR)
            out += ')';
        return;
    }
    }
}

int precedence(const BExp& b)
{
    switch (b.kind()) {
    case BExp::Kind::Or:
        return 1;
    case BExp::Kind::And:
        return 2;
    case BExp::Kind::Not:
        return 3;
    default:
        return 4;
    }
}

void print(const BExp& b, std::string& out)
{
    auto sub = [&](const BExp& child, bool paren) {
        if (paren)
            out += '(';
        print(child, out);
        if (paren)
            out += ')';
    };
    switch (b.kind()) {
    case BExp::Kind::True:
        out += "true";
        return;
    case BExp::Kind::False:
        out += "false";
        return;
    case BExp::Kind::Compare:
        print(b.left(), out);
        out += b.compareOp() == CompareOp::Eq ? " = " : " <= ";
        print(b.right(), out);
        return;
    case BExp::Kind::Not:
        out += "not ";
        sub(b.operand(), precedence(b.operand()) < 3);
        return;
    case BExp::Kind::And:
    case BExp::Kind::Or: {
        const int p = precedence(b);
        sub(b.first(), precedence(b.first()) < p);
        out += b.kind() == BExp::Kind::And ? " and " : " or ";
        sub(b.second(), precedence(b.second()) <= p);
        return;
    }
    }
}

} // namespace

std::string toString(const AExp& e)
{
    std::string out;
    print(e, out);
    return out;
}

std::string toString(const BExp& b)
{
    std::string out;
    print(b, out);
    return out;
}

std::string toString(const Command& c)
{
    return std::visit(
        [](const auto& cmd) -> std::string {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, Skip>)
                return "skip";
            else if constexpr (std::is_same_v<T, Assign>)
                return cmd.variable + " := " + toString(cmd.expr);
            else if constexpr (std::is_same_v<T, Branch>)
                return "if " + toString(cmd.cond) + " then " + cmd.target.name;
            else if constexpr (std::is_same_v<T, Goto>)
                return "goto " + cmd.target.name;
            else if constexpr (std::is_same_v<T, Halt>)
                return "halt";
            else
                return "done";
        },
        c);
}

} // namespace dfa
