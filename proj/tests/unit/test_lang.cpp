#include "helpers.hpp"

#include "dfa/fuzz.hpp"

#include <doctest.h>

using namespace dfa;
using testing::A;
using testing::B;
using testing::L;

TEST_SUITE("lang")
{
    TEST_CASE("variables of commands exclude the assignment target")
    {
        CHECK(variables(Command{Assign{"x", A("x + y")}}) == testing::vars({"x", "y"}));
        CHECK(variables(Command{Assign{"x", A("1")}}).empty());
        CHECK(variables(Command{Branch{B("x <= 3 and not (y = z)"), L("l0")}}) == testing::vars({"x", "y", "z"}));
        CHECK(variables(Command{Goto{L("l0")}}).empty());
    }

    TEST_CASE("subexpressions include every node of the tree")
    {
        const auto subs = subexpressions(A("(x + 1) * y"));
        const std::set<AExp> expected{A("(x + 1) * y"), A("x + 1"), A("x"), A("1"), A("y")};
        CHECK(subs == expected);
    }

    TEST_CASE("subexpressions of a comparison are its arithmetic operands")
    {
        const std::set<AExp> expected{A("x"), A("y + 1"), A("y"), A("1")};
        CHECK(subexpressions(B("x <= y + 1")) == expected);
        CHECK(subexpressions(Command{Skip{}}).empty());
        CHECK(subexpressions(B("true or not false")).empty());
    }

    TEST_CASE("successors follow the command kind")
    {
        const Program p = parseProgram("l0: x := 1\nl1: if x = 1 then l4\nl2: goto l0\nl3: skip\n"
                                       "l4: halt\nl5: done\n");
        CHECK(successors(p, L("l0")) == std::set<Label>{L("l1")});
        CHECK(successors(p, L("l1")) == std::set<Label>{L("l2"), L("l4")});
        CHECK(successors(p, L("l2")) == std::set<Label>{L("l0")});
        CHECK(successors(p, L("l4")) == std::set<Label>{L("l5")});
        CHECK(successors(p, L("l5")).empty());
        CHECK(predecessors(p, L("l0")) == std::set<Label>{L("l2")});
        CHECK(predecessors(p, L("l3")).empty());
        CHECK_THROWS_AS(successors(p, L("nope")), Error);
    }

    TEST_CASE("successor and predecessor maps are converse")
    {
        GenConfig config;
        for (const Program& p : generateCorpus(config, 50))
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t s : p.successors(i)) {
                    const auto& preds = p.predecessors(s);
                    CHECK(std::find(preds.begin(), preds.end(), i) != preds.end());
                }
    }

    TEST_CASE("well-formedness rules")
    {
        auto rules = [](const std::string& text) {
            std::vector<std::string> out;
            for (const auto& e : parse(text).errors)
                out.push_back(e.kind);
            return out;
        };
        CHECK(rules("l0: halt\nl1: done\n").empty());
        CHECK(rules("l0: skip\nl0: halt\nl1: done\n") == std::vector<std::string>{"duplicate-label"});
        CHECK(rules("l0: goto l9\nl1: halt\nl2: done\n") == std::vector<std::string>{"missing-target"});
        CHECK(rules("l0: halt\nl1: skip\nl2: halt\nl3: done\n") ==
              std::vector<std::string>{"halt-not-followed-by-done"});
        CHECK(rules("l0: skip\nl1: halt\n") == std::vector<std::string>{"halt-not-followed-by-done",
                                                                        "missing-terminal-done"});
        CHECK(rules("") == std::vector<std::string>{"missing-terminal-done"});
        CHECK(rules("l0: done\nl1: halt\nl2: done\n") == std::vector<std::string>{"extra-done"});
    }

    TEST_CASE("missing target is reported at the target's column")
    {
        const auto r = parse("l0: if true then l7\nl1: halt\nl2: done\n");
        REQUIRE(r.errors.size() == 1);
        CHECK(r.errors[0].span == SourceSpan{1, 18});
        CHECK(formatError(r.errors[0], "p.imp").rfind("p.imp:1:18: missing-target:", 0) == 0);
    }
}

TEST_SUITE("parser")
{
    TEST_CASE("precedence and associativity")
    {
        CHECK(toString(A("1 + 2 * 3")) == "1 + 2 * 3");
        CHECK(A("1 - 2 - 3") == AExp::binary(ArithOp::Minus, A("1 - 2"), A("3")));
        CHECK(toString(A("1 - (2 - 3)")) == "1 - (2 - 3)");
        CHECK(toString(A("(1 + 2) * 3")) == "(1 + 2) * 3");
        CHECK(toString(B("not x = 1 and y <= 2 or true")) == "not x = 1 and y <= 2 or true");
        CHECK(B("a = 1 or b = 1 and c = 1") ==
              BExp::disjunction(B("a = 1"), BExp::conjunction(B("b = 1"), B("c = 1"))));
        CHECK(toString(B("not (true and false)")) == "not (true and false)");
        CHECK(toString(B("(x + 1) <= 2")) == "x + 1 <= 2");
    }

    TEST_CASE("signed literals and range")
    {
        CHECK(A("-5").value() == -5);
        CHECK(A("3 - -2") == AExp::binary(ArithOp::Minus, A("3"), AExp::literal(-2)));
        CHECK(A("-9223372036854775808").value() == INT64_MIN);
        CHECK(A("9223372036854775807").value() == INT64_MAX);
        std::vector<ParseError> errors;
        CHECK_FALSE(parseAExp("9223372036854775808", &errors));
        CHECK_FALSE(errors.empty());
    }

    TEST_CASE("syntax errors carry positions")
    {
        auto r = parse("l0: x := 1 +\nl1: halt\nl2: done\n");
        REQUIRE_FALSE(r.ok());
        CHECK(r.errors[0].kind == "syntax");
        CHECK(r.errors[0].span.line == 1);
        r = parse("l0: x := $\nl1: halt\nl2: done\n");
        REQUIRE_FALSE(r.ok());
        CHECK(r.errors[0].kind == "lexical");
        CHECK(r.errors[0].span == SourceSpan{1, 10});
        CHECK_FALSE(parse("l0: if 1 <= 2 <= 3 then l0\nl1: halt\nl2: done\n").ok());
        CHECK_FALSE(parse("l0 x := 1\nl1: halt\nl2: done\n").ok());
        CHECK_THROWS_AS(parseProgram("l0: bogus\n"), Error);
    }

    TEST_CASE("comments, blank lines and CRLF are accepted")
    {
        const Program p = testing::fixture("comments_crlf");
        CHECK(p.size() == 5);
        CHECK(print(p).find('\r') == std::string::npos);
    }

    TEST_CASE("parenthesised booleans and comparisons both parse")
    {
        CHECK(B("(x + 1) = 2") == BExp::compare(CompareOp::Eq, A("x + 1"), A("2")));
        CHECK(B("(x = 2)") == BExp::compare(CompareOp::Eq, A("x"), A("2")));
        CHECK(B("((true))") == BExp::truth(true));
    }

    TEST_CASE("printing then parsing is the identity on fixtures")
    {
        for (const auto& name : testing::fixtureNames()) {
            const Program p = testing::fixture(name);
            CHECK_MESSAGE(parseProgram(print(p)) == p, name);
            CHECK(print(parseProgram(print(p))) == print(p));
        }
    }

    TEST_CASE("printing then parsing is the identity on generated programs")
    {
        GenConfig config;
        config.seed = 1234;
        config.maxExprDepth = 4;
        for (const Program& p : generateCorpus(config, 300))
            CHECK(parseProgram(print(p)) == p);
    }
}
