#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dutchbook/coherence.hpp"
#include "oracles.hpp"

#include <random>
#include <vector>

using namespace dutchbook;

namespace {

AlgebraPtr free_algebra(std::size_t vars) {
    Universe u;
    for (std::size_t i = 0; i < vars; ++i)
        u.push_back("X" + std::to_string(i + 1));
    return build_algebra(u);
}

Book two_event_book(const AlgebraPtr& algebra, const std::string& f1, Rat p1,
                    const std::string& f2, Rat p2) {
    const Universe& u = algebra->universe();
    return Book(algebra, {{event_of(algebra, parse(f1, u)), std::move(p1)},
                          {event_of(algebra, parse(f2, u)), std::move(p2)}});
}

/// max(0, p+q-1) and friends, the closed-form two-marginal bounds.
Rat conj_lo(const Rat& p, const Rat& q) {
    Rat excess = p + q - 1;
    return std::max(Rat(0), excess);
}
Rat conj_hi(const Rat& p, const Rat& q) { return std::min(p, q); }
Rat disj_lo(const Rat& p, const Rat& q) { return std::max(p, q); }
Rat disj_hi(const Rat& p, const Rat& q) {
    Rat sum = p + q;
    return std::min(Rat(1), sum);
}

} // namespace

TEST_CASE("book construction enforces the price range and the algebra") {
    AlgebraPtr algebra = free_algebra(1);
    Event x1 = event_of(algebra, parse("X1", algebra->universe()));
    CHECK_NOTHROW(Book(algebra, {{x1, Rat(0)}}));
    CHECK_NOTHROW(Book(algebra, {{x1, Rat(1)}}));
    CHECK_THROWS_AS(Book(algebra, {{x1, Rat(6, 5)}}), std::invalid_argument);
    CHECK_THROWS_AS(Book(algebra, {{x1, Rat(-1, 10)}}), std::invalid_argument);

    AlgebraPtr other = free_algebra(1);
    CHECK_THROWS_AS(Book(algebra, {{Event::all(other), Rat(1, 2)}}),
                    std::invalid_argument);
}

TEST_CASE("the balance table lists price minus indicator") {
    AlgebraPtr f1 = free_algebra(1);
    Book half(f1, {{event_of(f1, parse("X1", f1->universe())), Rat(1, 2)}});
    PayoffMatrix column = payoff_matrix(half);
    REQUIRE(column.size() == 2);
    CHECK(column[0][0] == Rat(1, 2));
    CHECK(column[1][0] == Rat(-1, 2));

    AlgebraPtr f2 = free_algebra(2);
    Book pair = two_event_book(f2, "X1", Rat(3, 5), "X1 & X2", Rat(7, 10));
    PayoffMatrix m = payoff_matrix(pair);
    PayoffMatrix expected = {{Rat(3, 5), Rat(7, 10)},
                             {Rat(3, 5), Rat(7, 10)},
                             {Rat(-2, 5), Rat(7, 10)},
                             {Rat(-2, 5), Rat(-3, 10)}};
    CHECK(m == expected);

    Book sure(f1, {{Event::all(f1), Rat(1)}});
    PayoffMatrix zeros = payoff_matrix(sure);
    CHECK(zeros[0][0] == 0);
    CHECK(zeros[1][0] == 0);
}

TEST_CASE("complementary prices extend to the obvious state") {
    AlgebraPtr algebra = free_algebra(1);
    Book book = two_event_book(algebra, "X1", Rat(3, 5), "~X1", Rat(2, 5));
    Verdict verdict = assess(book);
    REQUIRE(verdict.tag == Verdict::Tag::Consistent);
    CHECK(verdict.state->masses() == std::vector<Rat>{Rat(2, 5), Rat(3, 5)});
    CHECK(verify_verdict(book, verdict));
}

TEST_CASE("complement prices summing past one are refused") {
    AlgebraPtr algebra = free_algebra(1);
    Book book = two_event_book(algebra, "X1", Rat(3, 5), "~X1", Rat(1, 2));
    Verdict verdict = assess(book);
    REQUIRE(verdict.tag == Verdict::Tag::Inconsistent);
    CHECK(verify_verdict(book, verdict));
    std::vector<Rat> loss = balances(book, verdict.stakes);
    for (const Rat& l : loss) CHECK(l <= -1);
}

TEST_CASE("an overpriced conjunction is refused with unit-loss stakes") {
    AlgebraPtr algebra = free_algebra(2);
    Book book = two_event_book(algebra, "X1", Rat(3, 5), "X1 & X2", Rat(7, 10));
    Verdict verdict = assess(book);
    REQUIRE(verdict.tag == Verdict::Tag::Inconsistent);
    // The unit-loss witness in the (1,-1) direction.
    CHECK(verdict.stakes == std::vector<Rat>{Rat(10), Rat(-10)});
    CHECK(balances(book, verdict.stakes) ==
          std::vector<Rat>{Rat(-1), Rat(-1), Rat(-11), Rat(-1)});
    CHECK(verify_verdict(book, verdict));
}

TEST_CASE("duplicate events at conflicting prices are a free lunch") {
    AlgebraPtr algebra = free_algebra(1);
    Book book = two_event_book(algebra, "X1", Rat(1, 3), "X1", Rat(2, 3));
    Verdict verdict = assess(book);
    CHECK(verdict.tag == Verdict::Tag::Inconsistent);
    CHECK(verify_verdict(book, verdict));
}

TEST_CASE("prices 0 and 1 are allowed and meaningful") {
    AlgebraPtr algebra = free_algebra(2);
    Book book = two_event_book(algebra, "X1", Rat(1), "X1 & X2", Rat(0));
    Verdict verdict = assess(book);
    REQUIRE(verdict.tag == Verdict::Tag::Consistent);
    CHECK(verdict.state->masses()[2] == 1); // world 10
    CHECK(verify_verdict(book, verdict));
}

TEST_CASE("assessing an empty book is refused") {
    AlgebraPtr algebra = free_algebra(1);
    Book empty(algebra, {});
    CHECK_THROWS_AS(assess(empty), std::invalid_argument);
}

TEST_CASE("verdict verification is independent and strict") {
    AlgebraPtr algebra = free_algebra(2);
    Book book = two_event_book(algebra, "X1", Rat(3, 5), "X1 & X2", Rat(7, 10));
    Verdict verdict = assess(book);
    REQUIRE(verify_verdict(book, verdict));

    Verdict weakened = verdict;
    weakened.stakes[0] /= 2; // loses the guaranteed unit loss
    CHECK_FALSE(verify_verdict(book, weakened));

    Book ok = two_event_book(algebra, "X1", Rat(1, 2), "X2", Rat(1, 2));
    Verdict consistent = assess(ok);
    REQUIRE(consistent.tag == Verdict::Tag::Consistent);
    Verdict tampered = consistent;
    std::vector<Rat> masses = tampered.state->masses();
    std::swap(masses[0], masses[1]);
    if (masses != tampered.state->masses()) {
        tampered.state = StateVector(book.algebra(), masses);
        CHECK_FALSE(verify_verdict(ok, tampered));
    }
}

TEST_CASE("two marginals at a half give the textbook bounds") {
    AlgebraPtr algebra = free_algebra(2);
    Book book = two_event_book(algebra, "X1", Rat(1, 2), "X2", Rat(1, 2));
    Event conj = event_of(algebra, parse("X1 & X2", algebra->universe()));
    Event disj = event_of(algebra, parse("X1 | X2", algebra->universe()));

    ProbInterval ci = fundamental_interval(book, conj);
    REQUIRE_FALSE(ci.is_empty);
    CHECK(ci.lo == 0);
    CHECK(ci.hi == Rat(1, 2));
    CHECK(verify_interval(book, conj, ci));

    ProbInterval di = fundamental_interval(book, disj);
    CHECK(di.lo == Rat(1, 2));
    CHECK(di.hi == 1);
    CHECK(verify_interval(book, disj, di));
}

TEST_CASE("the whole two-marginal grid matches the closed form and the enumerator") {
    AlgebraPtr algebra = free_algebra(2);
    Event conj = event_of(algebra, parse("X1 & X2", algebra->universe()));
    Event disj = event_of(algebra, parse("X1 | X2", algebra->universe()));
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4; ++b) {
            Rat p(a, 4), q(b, 4);
            Book book = two_event_book(algebra, "X1", p, "X2", q);

            ProbInterval ci = fundamental_interval(book, conj);
            REQUIRE_FALSE(ci.is_empty);
            CHECK(ci.lo == conj_lo(p, q));
            CHECK(ci.hi == conj_hi(p, q));
            testoracle::OracleInterval co =
                testoracle::enumerate_interval(book, conj);
            REQUIRE_FALSE(co.empty);
            CHECK(co.lo == ci.lo);
            CHECK(co.hi == ci.hi);

            ProbInterval di = fundamental_interval(book, disj);
            CHECK(di.lo == disj_lo(p, q));
            CHECK(di.hi == disj_hi(p, q));
            testoracle::OracleInterval dz =
                testoracle::enumerate_interval(book, disj);
            CHECK(dz.lo == di.lo);
            CHECK(dz.hi == di.hi);
        }
    }
}

TEST_CASE("an empty book constrains nothing") {
    AlgebraPtr algebra = free_algebra(1);
    Book empty(algebra, {});
    Event x1 = event_of(algebra, parse("X1", algebra->universe()));
    ProbInterval interval = fundamental_interval(empty, x1);
    REQUIRE_FALSE(interval.is_empty);
    CHECK(interval.lo == 0);
    CHECK(interval.hi == 1);
    CHECK(verify_interval(empty, x1, interval));
}

TEST_CASE("an impossible book yields the empty interval for any query") {
    AlgebraPtr algebra = free_algebra(1);
    Book book = two_event_book(algebra, "X1", Rat(3, 5), "~X1", Rat(1, 2));
    Event x1 = event_of(algebra, parse("X1", algebra->universe()));
    ProbInterval interval = fundamental_interval(book, x1);
    CHECK(interval.is_empty);
    CHECK(verify_interval(book, x1, interval));
}

TEST_CASE("interval endpoints and witnesses agree with the enumerator on random books") {
    std::mt19937_64 rng(20250815);
    for (int trial = 0; trial < 120; ++trial) {
        Book book = testoracle::random_grid_book(rng, 3, 3);
        Event query = testoracle::random_event(rng, book.algebra());
        ProbInterval interval = fundamental_interval(book, query);
        testoracle::OracleInterval oracle =
            testoracle::enumerate_interval(book, query);
        REQUIRE(interval.is_empty == oracle.empty);
        if (!interval.is_empty) {
            CHECK(interval.lo == oracle.lo);
            CHECK(interval.hi == oracle.hi);
            CHECK(verify_interval(book, query, interval));
        }
    }
}

TEST_CASE("every small rational inside the interval extends, none outside does") {
    std::mt19937_64 rng(4077);
    int books_tested = 0;
    while (books_tested < 12) {
        Book book = testoracle::random_consistent_book(rng, 3, 3);
        Event query = testoracle::random_event(rng, book.algebra());
        ProbInterval interval = fundamental_interval(book, query);
        REQUIRE_FALSE(interval.is_empty);
        ++books_tested;
        for (int den = 1; den <= 12; ++den) {
            for (int num = 0; num <= den; ++num) {
                Rat r(num, den);
                Verdict extended = assess(book.extended(query, r));
                bool inside = interval.lo <= r && r <= interval.hi;
                CHECK((extended.tag == Verdict::Tag::Consistent) == inside);
            }
        }
    }
}

TEST_CASE("re-posting a derived price keeps the book consistent") {
    std::mt19937_64 rng(555888);
    for (int trial = 0; trial < 60; ++trial) {
        Book book = testoracle::random_consistent_book(rng, 4, 4);
        Verdict verdict = assess(book);
        REQUIRE(verdict.tag == Verdict::Tag::Consistent);
        Event h = testoracle::random_event(rng, book.algebra());
        Rat price = state_value(*verdict.state, h);
        Verdict again = assess(book.extended(h, price));
        CHECK(again.tag == Verdict::Tag::Consistent);
    }
}

TEST_CASE("a consistent state's prices cannot be beaten by any stakes") {
    std::mt19937_64 rng(99190);
    for (int trial = 0; trial < 40; ++trial) {
        Book book = testoracle::random_consistent_book(rng, 3, 4);
        Verdict verdict = assess(book);
        REQUIRE(verdict.tag == Verdict::Tag::Consistent);
        std::uniform_int_distribution<int> stake(-5, 5);
        for (int probe = 0; probe < 5; ++probe) {
            std::vector<Rat> s(book.size());
            for (Rat& v : s) v = stake(rng);
            std::vector<Rat> loss = balances(book, s);
            bool all_negative = true;
            for (const Rat& l : loss)
                if (l >= 0) all_negative = false;
            CHECK_FALSE(all_negative);
        }
    }
}

TEST_CASE("joint truth of events reduces to the all-ones book") {
    AlgebraPtr f1 = free_algebra(1);
    Event x1 = event_of(f1, parse("X1", f1->universe()));
    CHECK_FALSE(logical_consistency({x1, complement(x1)}).has_value());

    AlgebraPtr f2 = free_algebra(2);
    Event a = event_of(f2, parse("X1", f2->universe()));
    Event b = event_of(f2, parse("X2", f2->universe()));
    std::optional<World> witness = logical_consistency({a, b});
    REQUIRE(witness.has_value());
    CHECK(witness->to_string() == "11");

    // Under pairwise exclusion the pair {X1, X2} cannot both happen.
    Universe trio{"X1", "X2", "X3"};
    AlgebraPtr constrained = build_algebra(
        trio, parse("~(X1 & X2) & ~(X1 & X3) & ~(X2 & X3)", trio));
    Event cx1 = event_of(constrained, parse("X1", trio));
    Event cx2 = event_of(constrained, parse("X2", trio));
    CHECK_FALSE(logical_consistency({cx1, cx2}).has_value());

    CHECK_THROWS_AS(logical_consistency({}), std::invalid_argument);
}

TEST_CASE("joint truth agrees with assessing everything at price one") {
    std::mt19937_64 rng(246810);
    for (int trial = 0; trial < 80; ++trial) {
        AlgebraPtr algebra = free_algebra(3);
        std::uniform_int_distribution<std::size_t> count(1, 4);
        std::vector<Event> events;
        std::vector<std::pair<Event, Rat>> priced;
        for (std::size_t i = 0, k = count(rng); i < k; ++i) {
            events.push_back(testoracle::random_event(rng, algebra));
            priced.emplace_back(events.back(), Rat(1));
        }
        bool satisfiable = logical_consistency(events).has_value();
        Verdict verdict = assess(Book(algebra, std::move(priced)));
        CHECK(satisfiable == (verdict.tag == Verdict::Tag::Consistent));
    }
}

TEST_CASE("the verdict is indifferent to the ambient algebra") {
    AlgebraPtr f1 = free_algebra(1);
    Book consistent =
        two_event_book(f1, "X1", Rat(3, 5), "~X1", Rat(2, 5));
    CHECK(ambient_invariance_check(consistent, Universe{"X1", "Y", "Z"}));
    CHECK(ambient_invariance_check(consistent, Universe{"X1"}));

    AlgebraPtr f2 = free_algebra(2);
    Book inconsistent =
        two_event_book(f2, "X1", Rat(3, 5), "X1 & X2", Rat(7, 10));
    CHECK(ambient_invariance_check(inconsistent,
                                   Universe{"X1", "X2", "X3", "X4"}));

    // The enlarged universe must contain the original, in order.
    CHECK_THROWS_AS(ambient_invariance_check(consistent, Universe{"Y"}),
                    std::invalid_argument);
}

TEST_CASE("random books keep their verdict in a larger universe") {
    std::mt19937_64 rng(121212);
    for (int trial = 0; trial < 40; ++trial) {
        Book book = testoracle::random_grid_book(rng, 3, 3);
        Universe enlarged = book.algebra()->universe();
        enlarged.push_back("Z1");
        enlarged.push_back("Z2");
        CHECK(ambient_invariance_check(book, enlarged));
    }
}

TEST_CASE("interval verification is strict about endpoints and witnesses") {
    AlgebraPtr algebra = free_algebra(2);
    Book book = two_event_book(algebra, "X1", Rat(1, 2), "X2", Rat(1, 2));
    Event conj = event_of(algebra, parse("X1 & X2", algebra->universe()));
    ProbInterval interval = fundamental_interval(book, conj);
    REQUIRE(verify_interval(book, conj, interval));

    ProbInterval wrong = interval;
    wrong.hi = Rat(2, 3); // witness no longer attains it
    CHECK_FALSE(verify_interval(book, conj, wrong));

    ProbInterval fake_empty;
    fake_empty.is_empty = true;
    CHECK_FALSE(verify_interval(book, conj, fake_empty));
}
