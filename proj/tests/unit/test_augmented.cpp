#include "helpers.hpp"

#include "dfa/augmented.hpp"
#include "dfa/fuzz.hpp"

#include <doctest.h>

using namespace dfa;
using testing::A;
using testing::L;
using testing::vars;

namespace {

const Program& copyProgram()
{
    static const Program p = parseProgram("l0: x := 1\nl1: y := x\nl2: halt\nl3: done\n");
    return p;
}

Fact lvFact(const Program& p, std::set<std::string> v)
{
    return Fact::ofVariables(universeFor(AnalysisKind::LiveVariables, p), LatticeOrder::Subset, v);
}

std::vector<Program> corpus(std::uint64_t seed, std::size_t count)
{
    GenConfig config;
    config.seed = seed;
    return generateCorpus(config, count);
}

} // namespace

TEST_SUITE("augmented")
{
    TEST_CASE("live variables rule")
    {
        const Program& p = copyProgram();
        const AugConfig c{L("l1"), {{"x", 1}}, lvFact(p, {"x"})};
        const auto ok = augStep(AnalysisKind::LiveVariables, p, c, lvFact(p, {}));
        REQUIRE(ok.accepted());
        CHECK(ok.next->state == State{{"x", 1}, {"y", 1}});
        CHECK(ok.next->label == L("l2"));

        const AugConfig bad{L("l1"), {{"x", 1}}, lvFact(p, {})};
        const auto refused = augStep(AnalysisKind::LiveVariables, p, bad, lvFact(p, {}));
        CHECK(refused.status == AugStepResult::Status::Refused);
        CHECK(refused.reason == RefusalReason::ProphecyPreconditionViolated);

        // At l0: x := 1 the prediction may only grow by x, so y cannot appear.
        const AugConfig start{L("l0"), {}, lvFact(p, {})};
        const auto inconsistent = augStep(AnalysisKind::LiveVariables, p, start, lvFact(p, {"y"}));
        CHECK(inconsistent.reason == RefusalReason::PredictionInconsistent);

        // Standard stuckness is not a refusal.
        const AugConfig undefined{L("l1"), {}, lvFact(p, {"x"})};
        CHECK(augStep(AnalysisKind::LiveVariables, p, undefined, lvFact(p, {})).status ==
              AugStepResult::Status::Stuck);
    }

    TEST_CASE("metarule widens what skip and goto accept")
    {
        const Program q = parseProgram("l0: x := 1\nl1: skip\nl2: y := x\nl3: halt\nl4: done\n");
        const AugConfig c{L("l1"), {{"x", 1}}, lvFact(q, {"x", "y"})};
        CHECK_FALSE(augStep(AnalysisKind::LiveVariables, q, c, lvFact(q, {"x"})).accepted());
        CHECK(augStep(AnalysisKind::LiveVariables, q, c, lvFact(q, {"x"}), true).accepted());
        // Growing π is never allowed at skip.
        const AugConfig narrow{L("l1"), {{"x", 1}}, lvFact(q, {"x"})};
        CHECK_FALSE(augStep(AnalysisKind::LiveVariables, q, narrow, lvFact(q, {"x", "y"}), true).accepted());
    }

    TEST_CASE("very busy halt requires an empty prediction")
    {
        const Program p = parseProgram("l0: x := 1\nl1: y := x + 1\nl2: halt\nl3: done\n");
        const auto u = universeFor(AnalysisKind::VeryBusy, p);
        Fact pi = Fact::empty(u, LatticeOrder::ReverseSubset);
        pi.insertExpression(A("x + 1"));
        const AugConfig c{L("l2"), {{"x", 1}, {"y", 2}}, pi};
        const auto r = augStep(AnalysisKind::VeryBusy, p, c, Fact::empty(u, LatticeOrder::ReverseSubset));
        CHECK(r.status == AugStepResult::Status::Refused);
        const AugConfig ok{L("l2"), {{"x", 1}, {"y", 2}}, Fact::empty(u, LatticeOrder::ReverseSubset)};
        CHECK(augStep(AnalysisKind::VeryBusy, p, ok, Fact::empty(u, LatticeOrder::ReverseSubset)).accepted());
    }

    TEST_CASE("very busy assignment precondition")
    {
        const Program p = parseProgram("l0: x := 1\nl1: x := 2\nl2: y := x + 1\nl3: halt\nl4: done\n");
        const auto u = universeFor(AnalysisKind::VeryBusy, p);
        Fact pi = Fact::empty(u, LatticeOrder::ReverseSubset);
        pi.insertExpression(A("x + 1"));
        // x + 1 reads x and is not evaluated by x := 2, so it cannot be busy here.
        const AugConfig c{L("l1"), {{"x", 1}}, pi};
        const auto r = augStep(AnalysisKind::VeryBusy, p, c, pi);
        CHECK(r.reason == RefusalReason::ProphecyPreconditionViolated);
    }

    TEST_CASE("reaching definitions strong update")
    {
        const Program p = parseProgram("l0: x := 0\nl1: skip\nl2: skip\nl3: skip\nl4: skip\nl5: skip\n"
                                       "l6: skip\nl7: x := 1\nl8: halt\nl9: done\n");
        const auto u = universeFor(AnalysisKind::ReachingDefinitions, p);
        const Fact pi = Fact::ofDefinitions(u, {{"x", {L("l0")}}});
        const Fact expected = Fact::ofDefinitions(u, {{"x", {L("l7")}}});
        const AugConfig c{L("l7"), {{"x", 0}}, pi};
        const auto r = augStep(AnalysisKind::ReachingDefinitions, p, c, expected);
        REQUIRE(r.accepted());
        CHECK(r.next->pi == expected);
        CHECK(augStep(AnalysisKind::ReachingDefinitions, p, c, pi).status == AugStepResult::Status::Refused);
        const Program small = parseProgram("l0: x := 1\nl1: halt\nl2: done\n");
        const auto su = universeFor(AnalysisKind::ReachingDefinitions, small);
        const AugConfig start{L("l0"), {}, *initialHistory(AnalysisKind::ReachingDefinitions, su)};
        const auto successors = enumerateSuccessors(AnalysisKind::ReachingDefinitions, small, start);
        CHECK(successors.size() == 4);
    }

    TEST_CASE("defined variables history")
    {
        const Program& p = copyProgram();
        const auto u = universeFor(AnalysisKind::DefinedVariables, p);
        const auto pi0 = initialHistory(AnalysisKind::DefinedVariables, u);
        REQUIRE(pi0);
        CHECK(pi0->isEmpty());
        CHECK_FALSE(initialHistory(AnalysisKind::LiveVariables, u));
        const AugConfig c{L("l0"), {}, *pi0};
        CHECK(augStep(AnalysisKind::DefinedVariables, p, c, Fact::ofVariables(u, LatticeOrder::ReverseSubset, {"x"}))
                  .accepted());
        // Claiming y is defined would exceed the history.
        CHECK_FALSE(augStep(AnalysisKind::DefinedVariables, p, c,
                            Fact::ofVariables(u, LatticeOrder::ReverseSubset, {"x", "y"}))
                        .accepted());
    }

    TEST_CASE("preservation")
    {
        const Program& p = copyProgram();
        const auto lv = analyze(AnalysisKind::LiveVariables, p);
        const auto t = runAugmented(AnalysisKind::LiveVariables, p, lv.before[0], analysisPolicy(lv));
        CHECK(t.outcome == AugTrace::Outcome::Done);
        CHECK(checkPreservation(p, t.configs).passed());
        CHECK(checkPreservation(p, {}).passed());

        auto forged = t.configs;
        forged[1].state["x"] = 42;
        const auto report = checkPreservation(p, forged);
        REQUIRE_FALSE(report.passed());
        CHECK(report.failures[0].step == 0);
        CHECK(report.failures[0].rule == "projection-mismatch");
    }

    TEST_CASE("progress on fixtures")
    {
        for (const auto& name : testing::fixtureNames()) {
            const Program p = testing::fixture(name);
            for (AnalysisKind kind : allAnalysisKinds) {
                const auto result = analyze(kind, p);
                CHECK_MESSAGE(checkProgress(kind, p, result, 2000).passed(), name << " " << shortName(kind));
                CHECK_MESSAGE(checkProgress(kind, p, result, 2000, true).passed(), name << " " << shortName(kind));
            }
        }
    }

    TEST_CASE("progress notes budget exhaustion")
    {
        const Program p = testing::fixture("self_loop");
        const auto r = checkProgress(AnalysisKind::LiveVariables, p, analyze(AnalysisKind::LiveVariables, p), 100);
        CHECK(r.passed());
        CHECK(r.stepsChecked == 100);
        REQUIRE(r.notes.size() == 1);
        CHECK(r.notes[0].find("budget") != std::string::npos);
    }

    TEST_CASE("progress detects a deleted live read")
    {
        const Program& p = copyProgram();
        auto lv = analyze(AnalysisKind::LiveVariables, p);
        lv.before[1].eraseVariable("x");
        const auto r = checkProgress(AnalysisKind::LiveVariables, p, lv, 100);
        REQUIRE_FALSE(r.passed());
        CHECK(r.failures[0].rule == toString(RefusalReason::ProphecyPreconditionViolated));
    }

    TEST_CASE("trace theorems on hand-checked programs")
    {
        const Program& p = copyProgram();
        const auto dv = analyze(AnalysisKind::DefinedVariables, p);
        CHECK(dv.beforeAt(L("l1")).variables() == vars({"x"}));
        CHECK(checkTraceTheorems(AnalysisKind::DefinedVariables, p, dv, run(p)).passed());

        const Program d = testing::fixture("diamond");
        const auto rd = analyze(AnalysisKind::ReachingDefinitions, d);
        CHECK(checkTraceTheorems(AnalysisKind::ReachingDefinitions, d, rd, run(d)).passed());
        // Flip the branch so the other arm executes.
        const Program flipped = parseProgram(print(d).replace(print(d).find("x := 3"), 6, "x := 1"));
        CHECK(checkTraceTheorems(AnalysisKind::ReachingDefinitions, flipped,
                                 analyze(AnalysisKind::ReachingDefinitions, flipped), run(flipped))
                  .passed());
    }

    TEST_CASE("trace theorems detect corrupted results")
    {
        const Program& p = copyProgram();
        auto lv = analyze(AnalysisKind::LiveVariables, p);
        lv.before[1] = lvFact(p, {});
        lv.after[0] = lvFact(p, {});
        CHECK_FALSE(checkTraceTheorems(AnalysisKind::LiveVariables, p, lv, run(p)).passed());

        auto dv = analyze(AnalysisKind::DefinedVariables, p);
        dv.before[0].insertVariable("y");
        CHECK_FALSE(checkTraceTheorems(AnalysisKind::DefinedVariables, p, dv, run(p)).passed());

        auto rd = analyze(AnalysisKind::ReachingDefinitions, p);
        rd.before[1] = Fact::ofDefinitions(universeFor(AnalysisKind::ReachingDefinitions, p), {});
        CHECK_FALSE(checkTraceTheorems(AnalysisKind::ReachingDefinitions, p, rd, run(p)).passed());

        const Program q = testing::fixture("vbe_kill");
        auto vbe = analyze(AnalysisKind::VeryBusy, q);
        vbe.before[3].insertExpression(A("a + b"));
        CHECK_FALSE(checkTraceTheorems(AnalysisKind::VeryBusy, q, vbe, run(q)).passed());
    }

    TEST_CASE("linear and quadratic trace theorem checks agree")
    {
        for (const Program& p : corpus(31, 150)) {
            // Short traces keep the cubic reference check affordable.
            const Trace t = run(p, 300);
            for (AnalysisKind kind : {AnalysisKind::LiveVariables, AnalysisKind::VeryBusy}) {
                auto result = analyze(kind, p);
                CHECK(checkTraceTheorems(kind, p, result, t).passed() ==
                      checkTraceTheoremsNaive(kind, p, result, t).passed());
                // Also on a corrupted result, where the verdicts may be negative.
                if (p.size() > 2) {
                    const std::size_t i = p.size() / 2;
                    result.before[i] = Fact::empty(result.before[i].universe(), result.before[i].order());
                    if (kind == AnalysisKind::VeryBusy)
                        result.before[i] = Fact::full(result.before[i].universe(), result.before[i].order());
                    CHECK(checkTraceTheorems(kind, p, result, t).passed() ==
                          checkTraceTheoremsNaive(kind, p, result, t).passed());
                }
            }
        }
    }

    TEST_CASE("augmented invariants on analysis-driven traces")
    {
        for (const Program& p : corpus(41, 100))
            for (AnalysisKind kind : allAnalysisKinds) {
                const auto result = analyze(kind, p);
                const auto t = runAugmented(kind, p, result.before[p.first()], analysisPolicy(result), false, 2000);
                CHECK(t.outcome != AugTrace::Outcome::Refused);
                CHECK(checkPreservation(p, t.configs).passed());
                CHECK(checkAugmentedInvariants(kind, p, t.configs).passed());
            }
    }

    TEST_CASE("bisimulation on small programs")
    {
        for (const auto& name : {"straight", "undef", "dead_store", "redefine", "halt_only", "negatives"}) {
            const Program p = testing::fixture(name);
            for (AnalysisKind kind : allAnalysisKinds) {
                if (universeFor(kind, p)->size() > 12)
                    continue;
                CHECK_MESSAGE(checkBisimulation(kind, p, analyze(kind, p)).passed(), name << " " << shortName(kind));
            }
        }
        CHECK_THROWS_AS(enumerateSuccessors(AnalysisKind::VeryBusy, testing::fixture("nested_loops"),
                                            {L("l0"), {}, analyze(AnalysisKind::VeryBusy,
                                                                  testing::fixture("nested_loops"))
                                                              .before[0]},
                                            false, 4),
                        Error);
    }

    TEST_CASE("explicit policy drives a chosen prediction")
    {
        const Program& p = copyProgram();
        std::map<Label, Fact> table{{L("l0"), lvFact(p, {})}, {L("l1"), lvFact(p, {"x"})},
                                    {L("l2"), lvFact(p, {})}, {L("l3"), lvFact(p, {})}};
        const auto t = runAugmented(AnalysisKind::LiveVariables, p, lvFact(p, {}), explicitPolicy(table));
        CHECK(t.outcome == AugTrace::Outcome::Done);
        table.insert_or_assign(L("l1"), lvFact(p, {}));
        const auto refused = runAugmented(AnalysisKind::LiveVariables, p, lvFact(p, {}), explicitPolicy(table));
        CHECK(refused.outcome == AugTrace::Outcome::Refused);
    }
}
