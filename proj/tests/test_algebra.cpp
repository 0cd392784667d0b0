#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dutchbook/algebra.hpp"
#include "dutchbook/error.hpp"

#include <random>
#include <vector>

using namespace dutchbook;

namespace {

const Universe kTrio{"X1", "X2", "X3"};

/// The pairwise-exclusion algebra: three outcomes of which at most one can
/// happen, leaving the four worlds 000, 001, 010, 100.
AlgebraPtr exclusive_trio() {
    return build_algebra(kTrio,
                         parse("~(X1 & X2) & ~(X1 & X3) & ~(X2 & X3)", kTrio));
}

FormulaPtr random_formula(std::mt19937_64& rng, const Universe& universe,
                          int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 4);
    switch (kind(rng)) {
    case 0: {
        std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
        return Formula::var(universe[pick(rng)]);
    }
    case 1: {
        std::uniform_int_distribution<int> bit(0, 1);
        return Formula::constant(bit(rng) == 1);
    }
    case 2:
        return Formula::negation(random_formula(rng, universe, depth - 1));
    case 3:
        return Formula::conjunction(random_formula(rng, universe, depth - 1),
                                    random_formula(rng, universe, depth - 1));
    default:
        return Formula::disjunction(random_formula(rng, universe, depth - 1),
                                    random_formula(rng, universe, depth - 1));
    }
}

Event random_event(std::mt19937_64& rng, const AlgebraPtr& algebra) {
    boost::dynamic_bitset<> members(algebra->size());
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t i = 0; i < members.size(); ++i)
        if (bit(rng)) members.set(i);
    return Event(algebra, members);
}

} // namespace

TEST_CASE("an unconstrained universe keeps every world") {
    AlgebraPtr algebra = build_algebra(Universe{"X1", "X2"});
    REQUIRE(algebra->size() == 4);
    CHECK(algebra->worlds()[0].to_string() == "00");
    CHECK(algebra->worlds()[3].to_string() == "11");
    CHECK(algebra->constraint() == nullptr);
}

TEST_CASE("pairwise exclusion leaves exactly the four single-winner worlds") {
    AlgebraPtr algebra = exclusive_trio();
    REQUIRE(algebra->size() == 4);
    CHECK(algebra->worlds()[0].to_string() == "000");
    CHECK(algebra->worlds()[1].to_string() == "001");
    CHECK(algebra->worlds()[2].to_string() == "010");
    CHECK(algebra->worlds()[3].to_string() == "100");

    // Index lookup by raw bit pattern respects survivor positions.
    CHECK(algebra->index_of_bits(0b100).value() == 3);
    CHECK_FALSE(algebra->index_of_bits(0b110).has_value());
}

TEST_CASE("an unsatisfiable constraint is rejected") {
    Universe u{"X1"};
    CHECK_THROWS_AS(build_algebra(u, parse("X1 & ~X1", u)),
                    std::invalid_argument);
}

TEST_CASE("the cap applies to algebra construction") {
    Universe too_big;
    for (int i = 0; i < 21; ++i) too_big.push_back("V" + std::to_string(i));
    CHECK_THROWS_AS(build_algebra(too_big), CapacityError);
}

TEST_CASE("events of formulas list exactly the satisfying survivors") {
    AlgebraPtr algebra = exclusive_trio();

    // ~X1 holds in 000, 001, 010 (survivor indices 0,1,2).
    Event not_x1 = event_of(algebra, parse("~X1", kTrio));
    CHECK(not_x1.count() == 3);
    CHECK(not_x1.contains(0));
    CHECK(not_x1.contains(1));
    CHECK(not_x1.contains(2));
    CHECK_FALSE(not_x1.contains(3));

    // X1 & X2 was forbidden outright: the impossible event.
    Event both = event_of(algebra, parse("X1 & X2", kTrio));
    CHECK(both.count() == 0);
    CHECK(both == Event::none(algebra));

    CHECK(event_of(algebra, Formula::constant(true)) == Event::all(algebra));
    CHECK(event_of(algebra, Formula::constant(false)) == Event::none(algebra));
}

TEST_CASE("no winner at all remains possible under pairwise exclusion") {
    AlgebraPtr algebra = exclusive_trio();
    Event any_winner = join(join(event_of(algebra, parse("X1", kTrio)),
                                 event_of(algebra, parse("X2", kTrio))),
                            event_of(algebra, parse("X3", kTrio)));
    CHECK(any_winner.count() == 3);
    CHECK(any_winner != Event::all(algebra));
    CHECK_FALSE(any_winner.contains(0)); // world 000
}

TEST_CASE("boolean operations are set operations") {
    AlgebraPtr algebra = build_algebra(Universe{"X1", "X2"});
    Event x1 = event_of(algebra, parse("X1", algebra->universe()));
    Event x2 = event_of(algebra, parse("X2", algebra->universe()));

    CHECK(meet(x1, x2).count() == 1);
    CHECK(join(x1, x2).count() == 3);
    CHECK(complement(Event::none(algebra)) == Event::all(algebra));
    CHECK(meet(x1, complement(x1)) == Event::none(algebra));
    CHECK(join(x1, complement(x1)) == Event::all(algebra));
}

TEST_CASE("operations on formulas transport to operations on events") {
    Universe u{"A", "B", "C", "D", "E"};
    AlgebraPtr algebra = build_algebra(u);
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 80; ++trial) {
        FormulaPtr f = random_formula(rng, u, 4);
        FormulaPtr g = random_formula(rng, u, 4);
        CHECK(event_of(algebra, Formula::conjunction(f, g)) ==
              meet(event_of(algebra, f), event_of(algebra, g)));
        CHECK(event_of(algebra, Formula::disjunction(f, g)) ==
              join(event_of(algebra, f), event_of(algebra, g)));
        CHECK(event_of(algebra, Formula::negation(f)) ==
              complement(event_of(algebra, f)));
    }
}

TEST_CASE("mixing algebras is rejected") {
    AlgebraPtr a = build_algebra(Universe{"X1"});
    AlgebraPtr b = build_algebra(Universe{"X1"}); // same inputs, distinct owner
    Event ea = Event::all(a);
    Event eb = Event::all(b);
    CHECK_THROWS_AS(meet(ea, eb), std::invalid_argument);
    CHECK_THROWS_AS(join(ea, eb), std::invalid_argument);
    CHECK_THROWS_AS(state_value(StateVector(a, {Rat(1, 2), Rat(1, 2)}), eb),
                    std::invalid_argument);
}

TEST_CASE("event_of rejects formulas over undeclared variables") {
    AlgebraPtr algebra = build_algebra(Universe{"X1"});
    CHECK_THROWS_AS(event_of(algebra, Formula::var("Y")),
                    std::invalid_argument);
}

TEST_CASE("state vectors validate mass and sign") {
    AlgebraPtr algebra = build_algebra(Universe{"X1", "X2"});
    CHECK_NOTHROW(StateVector(
        algebra, {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}));
    // Sum below one.
    CHECK_THROWS_AS(StateVector(algebra, {Rat(1, 4), Rat(1, 4), Rat(1, 4),
                                          Rat(1, 5)}),
                    std::invalid_argument);
    // Negative mass.
    CHECK_THROWS_AS(
        StateVector(algebra, {Rat(-1, 4), Rat(1, 2), Rat(1, 4), Rat(1, 2)}),
        std::invalid_argument);
    // Wrong length.
    CHECK_THROWS_AS(StateVector(algebra, {Rat(1)}), std::invalid_argument);
}

TEST_CASE("state evaluation is the scalar product with the indicator") {
    AlgebraPtr algebra = build_algebra(Universe{"X1", "X2"});
    StateVector uniform(algebra,
                        {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
    Event x1 = event_of(algebra, parse("X1", algebra->universe()));
    CHECK(state_value(uniform, x1) == Rat(1, 2));
    CHECK(state_value(uniform, Event::all(algebra)) == 1);
    CHECK(state_value(uniform, Event::none(algebra)) == 0);

    // A point mass is the truth valuation of its world.
    StateVector point(algebra, {Rat(0), Rat(0), Rat(1), Rat(0)});
    CHECK(state_value(point, x1) == 1);
    CHECK(state_value(point, Event::atom(algebra, 2)) == 1);
    CHECK(state_value(point, Event::atom(algebra, 1)) == 0);
}

TEST_CASE("states are additive over disjoint events") {
    AlgebraPtr algebra = exclusive_trio();
    StateVector s(algebra, {Rat(1, 6), Rat(1, 3), Rat(1, 4), Rat(1, 4)});
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 100; ++trial) {
        Event e = random_event(rng, algebra);
        Event f = meet(random_event(rng, algebra), complement(e));
        CHECK(meet(e, f) == Event::none(algebra));
        CHECK(state_value(s, join(e, f)) ==
              state_value(s, e) + state_value(s, f));
    }
}

TEST_CASE("a state is determined by its atom masses") {
    AlgebraPtr algebra = build_algebra(Universe{"X1", "X2"});
    StateVector s(algebra, {Rat(1, 8), Rat(3, 8), Rat(1, 8), Rat(3, 8)});
    StateVector t(algebra, {Rat(1, 8), Rat(3, 8), Rat(1, 8), Rat(3, 8)});
    for (std::size_t i = 0; i < algebra->size(); ++i)
        CHECK(state_value(s, Event::atom(algebra, i)) ==
              state_value(t, Event::atom(algebra, i)));
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        Event e = random_event(rng, algebra);
        CHECK(state_value(s, e) == state_value(t, e));
    }
}

TEST_CASE("containment is meet-with-complement emptiness") {
    AlgebraPtr algebra = exclusive_trio();
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        Event e = random_event(rng, algebra);
        Event f = random_event(rng, algebra);
        bool contained = true;
        for (std::size_t i = 0; i < algebra->size(); ++i)
            if (e.contains(i) && !f.contains(i)) contained = false;
        CHECK(contained == (meet(e, complement(f)) == Event::none(algebra)));
    }
}
