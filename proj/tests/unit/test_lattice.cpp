#include "helpers.hpp"

#include "dfa/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace dfa;
using testing::L;

namespace {

UniversePtr eightVariables()
{
    return Universe::ofVariables({"a", "b", "c", "d", "e", "f", "g", "h"});
}

Fact randomFact(std::mt19937_64& rng, const UniversePtr& u, LatticeOrder order)
{
    Fact::Bits bits(u->size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = rng() & 1U;
    return Fact(u, order, bits);
}

} // namespace

TEST_SUITE("lattice")
{
    TEST_CASE("orders, joins and complements")
    {
        const auto u = Universe::ofVariables({"x", "y"});
        const Fact x = Fact::ofVariables(u, LatticeOrder::Subset, {"x"});
        const Fact y = Fact::ofVariables(u, LatticeOrder::Subset, {"y"});
        CHECK(join(x, y).variables() == testing::vars({"x", "y"}));
        CHECK(meet(x, y).isEmpty());
        CHECK(complement(x) == y);
        CHECK(leq(Fact::bottom(u, LatticeOrder::Subset), x));

        const Fact rx = Fact::ofVariables(u, LatticeOrder::ReverseSubset, {"x"});
        const Fact rxy = Fact::ofVariables(u, LatticeOrder::ReverseSubset, {"x", "y"});
        CHECK(leq(rxy, rx));
        CHECK_FALSE(leq(rx, rxy));
        CHECK(join(rx, rxy) == rx);
        CHECK(Fact::bottom(u, LatticeOrder::ReverseSubset).count() == 2);
        CHECK(Fact::top(u, LatticeOrder::ReverseSubset).isEmpty());
    }

    TEST_CASE("mixing universes or orders is rejected")
    {
        const auto u1 = Universe::ofVariables({"x"});
        const auto u2 = Universe::ofVariables({"y"});
        CHECK_THROWS_AS(join(Fact::empty(u1, LatticeOrder::Subset), Fact::empty(u2, LatticeOrder::Subset)), Error);
        CHECK_THROWS_AS(leq(Fact::empty(u1, LatticeOrder::Subset), Fact::empty(u1, LatticeOrder::ReverseSubset)),
                        Error);
        CHECK_THROWS_AS(Fact::empty(u1, LatticeOrder::PointwiseSubset), Error);
    }

    TEST_CASE("definition maps")
    {
        const auto u = Universe::ofDefinitions({"x", "y"}, {L("l0"), L("l1"), L("l2")});
        Fact f = Fact::ofDefinitions(u, {{"x", {L("l0")}}});
        CHECK(f.toString() == "{x: {l0}, y: {}}");
        f.setDefinition("x", L("l2"));
        f.setDefinition("y", L("l1"));
        CHECK(f.definitionsOf("x") == std::set<Label>{L("l2")});
        CHECK(f.toLines() == std::vector<std::string>{"x: {l2}", "y: {l1}"});
        const Fact g = Fact::ofDefinitions(u, {{"x", {L("l0")}}});
        CHECK(join(f, g).definitionsOf("x") == std::set<Label>{L("l0"), L("l2")});
        CHECK(leq(g, join(f, g)));
    }

    TEST_CASE("printing is lexicographic")
    {
        const auto u = Universe::ofVariables({"b", "a", "c"});
        CHECK(Fact::ofVariables(u, LatticeOrder::Subset, {"c", "a"}).toString() == "{a, c}");
    }

    TEST_CASE("lattice laws hold on random samples")
    {
        std::mt19937_64 rng(2024);
        const auto defs = Universe::ofDefinitions({"x", "y"}, {L("l0"), L("l1"), L("l2"), L("l3")});
        const std::vector<std::pair<UniversePtr, LatticeOrder>> lattices{
            {eightVariables(), LatticeOrder::Subset},
            {eightVariables(), LatticeOrder::ReverseSubset},
            {defs, LatticeOrder::PointwiseSubset},
        };
        for (const auto& [u, order] : lattices) {
            for (int i = 0; i < 2000; ++i) {
                const Fact a = randomFact(rng, u, order);
                const Fact b = randomFact(rng, u, order);
                const Fact c = randomFact(rng, u, order);
                REQUIRE(leq(a, a));
                if (leq(a, b) && leq(b, a))
                    REQUIRE(a == b);
                if (leq(a, b) && leq(b, c))
                    REQUIRE(leq(a, c));
                REQUIRE(join(a, meet(a, b)) == a);
                REQUIRE(meet(a, join(a, b)) == a);
                REQUIRE(meet(a, join(b, c)) == join(meet(a, b), meet(a, c)));
                REQUIRE(join(a, complement(a)) == Fact::top(u, order));
                REQUIRE(meet(a, complement(a)) == Fact::bottom(u, order));
                REQUIRE(leq(a, join(a, b)));
                REQUIRE(leq(meet(a, b), a));
            }
        }
    }

    TEST_CASE("prediction lemmas hold under their hypotheses")
    {
        std::mt19937_64 rng(7);
        const auto u = eightVariables();
        for (int i = 0; i < 2000; ++i) {
            const Fact after = randomFact(rng, u, LatticeOrder::Subset);
            const Fact D = randomFact(rng, u, LatticeOrder::Subset);
            const Fact U = randomFact(rng, u, LatticeOrder::Subset);
            const Fact before = setUnion(setDifference(after, D), U);
            const Fact smaller = setIntersection(after, randomFact(rng, u, LatticeOrder::Subset));
            const Fact larger = setUnion(after, randomFact(rng, u, LatticeOrder::Subset));
            REQUIRE(checkPredictionLemmaSubset(before, after, smaller, D, U));
            REQUIRE(checkPredictionLemmaReverse(before, after, larger, D, U));
            REQUIRE(checkPredictionLemmaEqSubset(after, after, after));
            REQUIRE(checkPredictionLemmaEqReverse(after, after, after));
        }
    }

    TEST_CASE("prediction lemma conclusions can fail when hypotheses do not hold")
    {
        const auto u = Universe::ofVariables({"x", "y"});
        const auto S = LatticeOrder::Subset;
        const Fact none = Fact::empty(u, S);
        const Fact x = Fact::ofVariables(u, S, {"x"});
        // before2 is not below after, and x is neither in before nor in D.
        CHECK_FALSE(checkPredictionLemmaSubset(none, none, x, none, none));
        CHECK_FALSE(checkPredictionLemmaEqSubset(none, none, x));
    }
}
