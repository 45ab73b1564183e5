#include "dfa/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

namespace dfa {

namespace {

enum class Tok { Ident, Int, Assign, Colon, Eq, Leq, Plus, Minus, Star, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int column;
};

const std::set<std::string, std::less<>> keywords = {
    "skip", "if", "then", "goto", "halt", "done", "true", "false", "not", "and", "or",
};

bool isKeyword(std::string_view word) { return keywords.contains(word); }

std::string describe(const Token& t)
{
    if (t.kind == Tok::End)
        return "end of line";
    return "'" + t.text + "'";
}

struct Failure {
    int column;
    std::string kind;
    std::string message;
};

/// Splits one source line into tokens; a '#' starts a comment.
std::vector<Token> lexLine(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char ch = line[i];
        const int col = static_cast<int>(i) + 1;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
        } else if (ch == '#') {
            break;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            out.push_back({Tok::Int, std::string(line.substr(i, j - i)), col});
            i = j;
        } else if (ch == ':') {
            if (i + 1 < line.size() && line[i + 1] == '=') {
                out.push_back({Tok::Assign, ":=", col});
                i += 2;
            } else {
                out.push_back({Tok::Colon, ":", col});
                ++i;
            }
        } else if (ch == '<') {
            if (i + 1 < line.size() && line[i + 1] == '=') {
                out.push_back({Tok::Leq, "<=", col});
                i += 2;
            } else {
                throw Failure{col, "lexical", "unexpected '<' (did you mean '<='?)"};
            }
        } else {
            Tok kind;
            switch (ch) {
            case '=': kind = Tok::Eq; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default: {
                std::string shown = (static_cast<unsigned char>(ch) < 0x20 || static_cast<unsigned char>(ch) >= 0x7f)
                    ? "byte 0x" + [&] {
                          std::ostringstream os;
                          os << std::hex << static_cast<int>(static_cast<unsigned char>(ch));
                          return os.str();
                      }()
                    : std::string("'") + ch + "'";
                throw Failure{col, "lexical", "unexpected character " + shown};
            }
            }
            out.push_back({kind, std::string(1, ch), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

class LineParser {
public:
    explicit LineParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    LabeledCommand labeledCommand()
    {
        Label label{expectName("label")};
        expect(Tok::Colon, "':' after label");
        Command cmd = command();
        expectEnd();
        return {std::move(label), std::move(cmd)};
    }

    AExp wholeAExp()
    {
        AExp e = aexp();
        expectEnd();
        return e;
    }

    BExp wholeBExp()
    {
        BExp b = bexp();
        expectEnd();
        return b;
    }

    /// Column of the label target in a goto/branch, for error reporting.
    int targetColumn() const { return targetColumn_; }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool atWord(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }

    [[noreturn]] void fail(const std::string& expected) const
    {
        throw Failure{peek().column, "syntax", "expected " + expected + ", found " + describe(peek())};
    }

    void expect(Tok kind, const std::string& what)
    {
        if (!at(kind))
            fail(what);
        ++pos_;
    }

    void expectWord(std::string_view word)
    {
        if (!atWord(word))
            fail("'" + std::string(word) + "'");
        ++pos_;
    }

    void expectEnd()
    {
        if (!at(Tok::End))
            fail("end of line");
    }

    std::string expectName(const std::string& what)
    {
        if (!at(Tok::Ident) || isKeyword(peek().text))
            fail(what);
        return toks_[pos_++].text;
    }

    Command command()
    {
        if (atWord("skip")) {
            ++pos_;
            return Skip{};
        }
        if (atWord("halt")) {
            ++pos_;
            return Halt{};
        }
        if (atWord("done")) {
            ++pos_;
            return Done{};
        }
        if (atWord("goto")) {
            ++pos_;
            targetColumn_ = peek().column;
            return Goto{Label{expectName("label after 'goto'")}};
        }
        if (atWord("if")) {
            ++pos_;
            BExp cond = bexp();
            expectWord("then");
            targetColumn_ = peek().column;
            return Branch{std::move(cond), Label{expectName("label after 'then'")}};
        }
        std::string var = expectName("command");
        expect(Tok::Assign, "':='");
        return Assign{std::move(var), aexp()};
    }

    AExp aexp()
    {
        AExp e = term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const ArithOp op = at(Tok::Plus) ? ArithOp::Plus : ArithOp::Minus;
            ++pos_;
            e = AExp::binary(op, std::move(e), term());
        }
        return e;
    }

    AExp term()
    {
        AExp e = factor();
        while (at(Tok::Star)) {
            ++pos_;
            e = AExp::binary(ArithOp::Times, std::move(e), factor());
        }
        return e;
    }

    AExp factor()
    {
        if (at(Tok::Minus) || at(Tok::Plus)) {
            const bool negative = at(Tok::Minus);
            ++pos_;
            if (!at(Tok::Int))
                fail("integer literal after sign");
            return literal(negative);
        }
        if (at(Tok::Int))
            return literal(false);
        if (at(Tok::LParen)) {
            ++pos_;
            AExp e = aexp();
            expect(Tok::RParen, "')'");
            return e;
        }
        return AExp::variable(expectName("expression"));
    }

    AExp literal(bool negative)
    {
        const Token& t = toks_[pos_];
        std::uint64_t magnitude = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
        constexpr std::uint64_t maxPositive = std::numeric_limits<std::int64_t>::max();
        if (ec != std::errc() || magnitude > maxPositive + (negative ? 1 : 0))
            throw Failure{t.column, "syntax", "integer literal " + std::string(negative ? "-" : "") + t.text +
                                                  " is outside the 64-bit signed range"};
        ++pos_;
        if (negative)
            return AExp::literal(static_cast<std::int64_t>(0 - magnitude));
        return AExp::literal(static_cast<std::int64_t>(magnitude));
    }

    BExp bexp()
    {
        BExp b = conjunction();
        while (atWord("or")) {
            ++pos_;
            b = BExp::disjunction(std::move(b), conjunction());
        }
        return b;
    }

    BExp conjunction()
    {
        BExp b = negation();
        while (atWord("and")) {
            ++pos_;
            b = BExp::conjunction(std::move(b), negation());
        }
        return b;
    }

    BExp negation()
    {
        if (atWord("not")) {
            ++pos_;
            return BExp::negation(negation());
        }
        return batom();
    }

    BExp batom()
    {
        if (atWord("true")) {
            ++pos_;
            return BExp::truth(true);
        }
        if (atWord("false")) {
            ++pos_;
            return BExp::truth(false);
        }
        if (!at(Tok::LParen))
            return comparison();
        // A '(' opens either a parenthesized boolean or the left operand of a
        // comparison. Try the comparison first, then backtrack; report
        // whichever attempt got further.
        const std::size_t start = pos_;
        try {
            return comparison();
        } catch (const Failure& asComparison) {
            pos_ = start;
            try {
                ++pos_;
                BExp b = bexp();
                expect(Tok::RParen, "')'");
                return b;
            } catch (const Failure& asBoolean) {
                throw asBoolean.column >= asComparison.column ? asBoolean : asComparison;
            }
        }
    }

    BExp comparison()
    {
        AExp left = aexp();
        CompareOp op;
        if (at(Tok::Eq))
            op = CompareOp::Eq;
        else if (at(Tok::Leq))
            op = CompareOp::Leq;
        else
            fail("'=' or '<='");
        ++pos_;
        AExp right = aexp();
        if (at(Tok::Eq) || at(Tok::Leq))
            throw Failure{peek().column, "syntax", "comparison operators do not chain; add parentheses"};
        return BExp::compare(op, std::move(left), std::move(right));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int targetColumn_ = 1;
};

template <typename T, typename Fn>
std::optional<T> parseExpression(std::string_view text, std::vector<ParseError>* errors, Fn fn)
{
    if (text.find('\n') != std::string_view::npos) {
        if (errors)
            errors->push_back({{1, static_cast<int>(text.find('\n')) + 1}, "syntax", "expressions must fit on one line"});
        return std::nullopt;
    }
    try {
        LineParser p(lexLine(text));
        return fn(p);
    } catch (const Failure& f) {
        if (errors)
            errors->push_back({{1, f.column}, f.kind, f.message});
        return std::nullopt;
    }
}

} // namespace

std::string formatError(const ParseError& error, std::string_view source)
{
    std::ostringstream os;
    if (!source.empty())
        os << source << ':';
    os << error.span.line << ':' << error.span.column << ": " << error.kind << ": " << error.message;
    return os.str();
}

ParseResult parse(std::string_view text)
{
    ParseResult result;
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    std::vector<LabeledCommand> commands;
    std::vector<SourceSpan> commandSpans;
    std::vector<int> targetColumns;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++lineNo;
        pos = eol + 1;
        try {
            std::vector<Token> toks = lexLine(line);
            if (toks.size() == 1)
                continue; // blank or comment-only line
            const int column = toks.front().column;
            LineParser p(std::move(toks));
            commands.push_back(p.labeledCommand());
            commandSpans.push_back({lineNo, column});
            targetColumns.push_back(p.targetColumn());
        } catch (const Failure& f) {
            result.errors.push_back({{lineNo, f.column}, f.kind, f.message});
        }
        if (eol == text.size())
            break;
    }
    if (!result.errors.empty())
        return result;

    Program program(std::move(commands));
    for (const auto& e : validate(program)) {
        SourceSpan span{lineNo, 1};
        if (e.position < commandSpans.size()) {
            span = commandSpans[e.position];
            if (e.rule == WellFormednessError::Rule::MissingTarget)
                span.column = targetColumns[e.position];
        }
        if (e.rule == WellFormednessError::Rule::MissingTerminalDone && program.size() == 0)
            span = {lineNo, 1};
        result.errors.push_back({span, e.ruleName(), e.message()});
    }
    if (result.errors.empty())
        result.program = std::move(program);
    return result;
}

Program parseProgram(std::string_view text)
{
    ParseResult r = parse(text);
    if (r.ok())
        return std::move(*r.program);
    std::string message;
    for (const auto& e : r.errors) {
        if (!message.empty())
            message += '\n';
        message += formatError(e);
    }
    throw Error("parse-error", message);
}

std::optional<AExp> parseAExp(std::string_view text, std::vector<ParseError>* errors)
{
    return parseExpression<AExp>(text, errors, [](LineParser& p) { return p.wholeAExp(); });
}

std::optional<BExp> parseBExp(std::string_view text, std::vector<ParseError>* errors)
{
    return parseExpression<BExp>(text, errors, [](LineParser& p) { return p.wholeBExp(); });
}

std::string print(const Program& program)
{
    std::string out;
    for (const auto& [label, cmd] : program.commands()) {
        out += label.name;
        out += ": ";
        out += toString(cmd);
        out += '\n';
    }
    return out;
}

} // namespace dfa
