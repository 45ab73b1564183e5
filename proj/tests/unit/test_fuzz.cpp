#include "helpers.hpp"

#include "dfa/fuzz.hpp"
#include "dfa/serialize.hpp"

#include <doctest.h>

using namespace dfa;

TEST_SUITE("fuzz")
{
    TEST_CASE("generation is deterministic and valid")
    {
        GenConfig config;
        config.seed = 9;
        CHECK(generate(config) == generate(config));
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            config.seed = seed;
            const Program p = generate(config);
            REQUIRE(validate(p).empty());
            REQUIRE(p.size() >= 2);
            CHECK(isDone(p.command(p.size() - 1)));
            CHECK(isHalt(p.command(p.size() - 2)));
            CHECK(p.size() <= static_cast<std::size_t>(config.maxCommands) + 2);
        }
    }

    TEST_CASE("tiny programs")
    {
        GenConfig config;
        config.seed = 1;
        config.maxCommands = 1;
        const Program p = generate(config);
        CHECK((p.size() == 2 || p.size() == 3));
        config.maxCommands = 0;
        CHECK(generate(config).size() == 2);
    }

    TEST_CASE("branch frequency and diversity")
    {
        GenConfig config;
        std::set<std::string> distinct;
        std::size_t branches = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            config.seed = seed;
            const Program p = generate(config);
            distinct.insert(print(p));
            for (const auto& c : p.commands())
                branches += std::holds_alternative<Branch>(c.command);
        }
        CHECK(distinct.size() == 100);
        CHECK(branches / 100.0 >= 1.0);
    }

    TEST_CASE("a healthy share of generated runs terminate")
    {
        GenConfig config;
        std::size_t done = 0;
        const auto programs = generateCorpus(config, 200);
        for (const Program& p : programs)
            done += run(p, 10000).outcome == Outcome::Done;
        CHECK(done >= 60);
    }

    TEST_CASE("invalid configurations are rejected")
    {
        GenConfig config;
        config.branchProb = 1.5;
        CHECK_THROWS_AS(generate(config), Error);
        config = {};
        config.maxVars = 0;
        CHECK_THROWS_AS(generate(config), Error);
        config = {};
        config.literalMin = 5;
        config.literalMax = 4;
        CHECK_THROWS_AS(generate(config), Error);
    }

    TEST_CASE("the suite passes on fixtures")
    {
        std::vector<Program> programs;
        for (const auto& name : testing::fixtureNames())
            programs.push_back(testing::fixture(name));
        const auto report = runSuite(programs);
        CHECK_MESSAGE(report.passed(), report.toTable());
    }

    TEST_CASE("a single corrupted result fails exactly one program")
    {
        GenConfig config;
        config.seed = 3;
        const auto programs = generateCorpus(config, 20);
        std::size_t target = 0;
        while (variables(programs[target]).empty())
            ++target;
        SuiteOptions options;
        options.tamper = [target](std::size_t index, AnalysisKind kind, const Program&, AnalysisResult& result) {
            // Shrinking re-runs the tamper on smaller programs whose universe may be empty.
            if (index == target && kind == AnalysisKind::ReachingDefinitions && result.after[0].bits().size() > 0)
                result.after[0].bits().flip(0);
        };
        const auto report = runSuite(programs, options);
        CHECK(report.failingPrograms() == 1);
        CHECK_FALSE(report.programs[target].passed());
        REQUIRE(report.programs[target].shrunk);
        CHECK(report.toTable().find("audit-rd") != std::string::npos);
    }

    TEST_CASE("shrinking keeps the failure")
    {
        const Program p = testing::fixture("dead_store");
        const auto fails = [](const Program& q) {
            return std::holds_alternative<Assign>(q.command(3));
        };
        const Program small = shrinkProgram(p, fails);
        CHECK(fails(small));
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(std::holds_alternative<Skip>(small.command(i)));
    }

    TEST_CASE("suite output is byte-stable")
    {
        GenConfig config;
        config.seed = 12;
        const auto a = suiteReportToJson(runSuite(generateCorpus(config, 30)));
        const auto b = suiteReportToJson(runSuite(generateCorpus(config, 30)));
        CHECK(a == b);
    }
}
