#include "dutchbook/coherence.hpp"

#include <algorithm>
#include <stdexcept>

namespace dutchbook {

namespace {

/// Feasibility system shared by assess and the interval solves: masses
/// u_i >= 0 summing to 1 that reproduce every assessed price.
LinearProgram extension_program(const Book& book) {
    const std::size_t n = book.algebra()->size();
    LinearProgram lp;
    lp.num_variables = n;
    lp.direction = Direction::FeasibilityOnly;
    lp.bounds.assign(n, VariableBounds{Rat(0), std::nullopt});

    LinearConstraint total;
    total.coefficients.assign(n, Rat(1));
    total.relation = Relation::Equal;
    total.rhs = 1;
    lp.constraints.push_back(std::move(total));

    for (const auto& [event, price] : book.assessments()) {
        LinearConstraint row;
        row.coefficients.assign(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            if (event.contains(i)) row.coefficients[i] = 1;
        row.relation = Relation::Equal;
        row.rhs = price;
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

void require_book_algebra(const Book& book, const Event& event) {
    if (book.algebra().get() != event.algebra().get())
        throw std::invalid_argument(
            "event does not belong to the book's algebra");
}

} // namespace

Book::Book(AlgebraPtr algebra, std::vector<std::pair<Event, Rat>> assessments)
    : algebra_(std::move(algebra)), assessments_(std::move(assessments)) {
    if (!algebra_)
        throw std::invalid_argument("book requires an algebra");
    for (const auto& [event, price] : assessments_) {
        if (event.algebra().get() != algebra_.get())
            throw std::invalid_argument(
                "assessed event does not belong to the book's algebra");
        if (price < 0 || price > 1)
            throw std::invalid_argument("price " + to_string(price) +
                                        " lies outside [0,1]");
    }
}

Book Book::extended(Event event, Rat price) const {
    std::vector<std::pair<Event, Rat>> more = assessments_;
    more.emplace_back(std::move(event), std::move(price));
    return Book(algebra_, std::move(more));
}

PayoffMatrix payoff_matrix(const Book& book) {
    if (book.size() == 0)
        throw std::invalid_argument("payoff matrix of an empty book");
    const std::size_t n = book.algebra()->size();
    const std::size_t m = book.size();
    PayoffMatrix matrix(n, std::vector<Rat>(m));
    for (std::size_t j = 0; j < m; ++j) {
        const auto& [event, price] = book.assessments()[j];
        for (std::size_t i = 0; i < n; ++i)
            matrix[i][j] = event.contains(i) ? price - 1 : price;
    }
    return matrix;
}

std::vector<Rat> balances(const Book& book, const std::vector<Rat>& stakes) {
    if (stakes.size() != book.size())
        throw std::invalid_argument(
            "stake vector length does not match the book");
    PayoffMatrix matrix = payoff_matrix(book);
    std::vector<Rat> result(matrix.size(), Rat(0));
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < stakes.size(); ++j)
            result[i] += matrix[i][j] * stakes[j];
    return result;
}

Verdict assess(const Book& book, std::uint64_t pivot_cap) {
    if (book.size() == 0)
        throw std::invalid_argument("cannot assess an empty book");

    LpOutcome out = solve(extension_program(book), pivot_cap);
    Verdict verdict;
    if (out.tag == LpOutcome::Tag::Feasible) {
        verdict.tag = Verdict::Tag::Consistent;
        verdict.state.emplace(book.algebra(), std::move(out.point));
    } else if (out.tag == LpOutcome::Tag::Infeasible) {
        verdict.tag = Verdict::Tag::Inconsistent;
        // Multiplier order: the mass-sum row, then one row per assessment,
        // then the nonnegativity rows.  The stake on assessment j is the
        // negated multiplier of its row: the certificate's cancellation is
        // precisely the statement that those stakes lose in every world.
        const std::size_t m = book.size();
        verdict.stakes.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            verdict.stakes[j] = -out.multipliers[1 + j];
        // Scale so the bookmaker's best world loses exactly 1.
        std::vector<Rat> world_balance = balances(book, verdict.stakes);
        Rat best = world_balance[0];
        for (const Rat& b : world_balance)
            if (b > best) best = b;
        if (best >= 0)
            throw std::logic_error(
                "stake certificate does not lose everywhere: solver fault");
        for (Rat& s : verdict.stakes) s /= -best;
    } else {
        throw std::logic_error("unexpected outcome for a feasibility program");
    }

    if (!verify_verdict(book, verdict))
        throw std::logic_error(
            "assessment certificate failed re-verification: solver fault");
    return verdict;
}

ProbInterval fundamental_interval(const Book& book, const Event& query,
                                  std::uint64_t pivot_cap) {
    require_book_algebra(book, query);

    LinearProgram lp = extension_program(book);
    const std::size_t n = book.algebra()->size();
    lp.objective.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        if (query.contains(i)) lp.objective[i] = 1;

    lp.direction = Direction::Minimize;
    LpOutcome low = solve(lp, pivot_cap);
    ProbInterval interval;
    if (low.tag == LpOutcome::Tag::Infeasible) {
        interval.is_empty = true;
        return interval;
    }
    if (low.tag != LpOutcome::Tag::Optimal)
        throw std::logic_error("interval program must be bounded");

    lp.direction = Direction::Maximize;
    LpOutcome high = solve(lp, pivot_cap);
    if (high.tag != LpOutcome::Tag::Optimal)
        throw std::logic_error("interval program must be bounded");

    interval.lo = std::move(low.value);
    interval.hi = std::move(high.value);
    interval.witness_lo.emplace(book.algebra(), std::move(low.point));
    interval.witness_hi.emplace(book.algebra(), std::move(high.point));

    if (!verify_interval(book, query, interval))
        throw std::logic_error(
            "interval witnesses failed re-verification: solver fault");
    return interval;
}

std::optional<World> logical_consistency(const std::vector<Event>& events) {
    if (events.empty())
        throw std::invalid_argument(
            "logical consistency of an empty event list");
    Event acc = events[0];
    for (std::size_t i = 1; i < events.size(); ++i) acc = meet(acc, events[i]);
    boost::dynamic_bitset<>::size_type first = acc.members().find_first();
    if (first == boost::dynamic_bitset<>::npos) return std::nullopt;
    return acc.algebra()->worlds()[first];
}

bool ambient_invariance_check(const Book& book, const Universe& larger_universe,
                              std::size_t world_cap) {
    const AlgebraPtr& original = book.algebra();
    const Universe& base = original->universe();

    // The original declaration order must be preserved inside the larger
    // universe so that projections are well-defined.
    std::vector<std::size_t> position(base.size());
    {
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            while (cursor < larger_universe.size() &&
                   larger_universe[cursor] != base[i])
                ++cursor;
            if (cursor == larger_universe.size())
                throw std::invalid_argument(
                    "enlarged universe must contain every original variable "
                    "in declaration order");
            position[i] = cursor++;
        }
    }

    AlgebraPtr enlarged =
        build_algebra(larger_universe, original->constraint(), world_cap);

    // Each enlarged world projects onto an original world (the constraint
    // mentions only original variables, so the projection survives it);
    // an event transports along that projection.
    const std::vector<World>& big_worlds = enlarged->worlds();
    std::vector<std::size_t> projected(big_worlds.size());
    for (std::size_t w = 0; w < big_worlds.size(); ++w) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < base.size(); ++i)
            bits = (bits << 1) | static_cast<std::uint64_t>(
                                     big_worlds[w].value(position[i]));
        std::optional<std::size_t> idx = original->index_of_bits(bits);
        if (!idx)
            throw std::logic_error(
                "projection left the original algebra: constraint mismatch");
        projected[w] = *idx;
    }

    std::vector<std::pair<Event, Rat>> transported;
    transported.reserve(book.size());
    for (const auto& [event, price] : book.assessments()) {
        boost::dynamic_bitset<> bits(big_worlds.size());
        for (std::size_t w = 0; w < big_worlds.size(); ++w)
            if (event.contains(projected[w])) bits.set(w);
        transported.emplace_back(Event(enlarged, std::move(bits)), price);
    }

    Book enlarged_book(enlarged, std::move(transported));
    return assess(book).tag == assess(enlarged_book).tag;
}

bool verify_verdict(const Book& book, const Verdict& verdict) {
    if (book.size() == 0) return false;
    if (verdict.tag == Verdict::Tag::Consistent) {
        if (!verdict.state) return false;
        if (verdict.state->algebra().get() != book.algebra().get())
            return false;
        for (const auto& [event, price] : book.assessments())
            if (state_value(*verdict.state, event) != price) return false;
        return true;
    }
    if (verdict.stakes.size() != book.size()) return false;
    for (const Rat& b : balances(book, verdict.stakes))
        if (b > -1) return false;
    return true;
}

bool verify_interval(const Book& book, const Event& query,
                     const ProbInterval& interval, std::uint64_t pivot_cap) {
    if (book.algebra().get() != query.algebra().get()) return false;
    if (interval.is_empty) {
        // Emptiness carries no witness; it is re-derived, not re-checked.
        if (book.size() == 0) return false;
        return assess(book, pivot_cap).tag == Verdict::Tag::Inconsistent;
    }
    if (interval.lo < 0 || interval.lo > interval.hi || interval.hi > 1)
        return false;
    if (!interval.witness_lo || !interval.witness_hi) return false;
    for (const StateVector* witness :
         {&*interval.witness_lo, &*interval.witness_hi}) {
        if (witness->algebra().get() != book.algebra().get()) return false;
        for (const auto& [event, price] : book.assessments())
            if (state_value(*witness, event) != price) return false;
    }
    return state_value(*interval.witness_lo, query) == interval.lo &&
           state_value(*interval.witness_hi, query) == interval.hi;
}

} // namespace dutchbook
