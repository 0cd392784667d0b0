#ifndef DUTCHBOOK_COHERENCE_HPP
#define DUTCHBOOK_COHERENCE_HPP

#include "dutchbook/algebra.hpp"
#include "dutchbook/ratlp.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dutchbook {

/// An ordered list of priced events over one algebra: the bookmaker's
/// posted prices.  Prices must lie in [0,1] exactly; anything else is
/// rejected at construction (a price outside [0,1] loses money against a
/// trivial strategy and is not worth analyzing).  A book may be empty;
/// assess() requires at least one assessment but interval queries do not.
class Book {
public:
    Book(AlgebraPtr algebra, std::vector<std::pair<Event, Rat>> assessments);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<std::pair<Event, Rat>>& assessments() const {
        return assessments_;
    }
    std::size_t size() const { return assessments_.size(); }

    /// A copy of this book with one more priced event appended.
    Book extended(Event event, Rat price) const;

private:
    AlgebraPtr algebra_;
    std::vector<std::pair<Event, Rat>> assessments_;
};

/// The bookmaker's per-unit-stake balance table: one row per world, one
/// column per assessment, entry (i,j) = price_j - [world i is in event j].
/// Every entry is therefore either price_j or price_j - 1.
using PayoffMatrix = std::vector<std::vector<Rat>>;

/// Outcome of assessing a book.  Exactly one arm applies:
///  - Consistent: `state` extends the book, reproducing every price
///    exactly.
///  - Inconsistent: `stakes` is a bet vector (the bettor's side) under
///    which the bookmaker's balance is <= -1 in every world; the scaling
///    makes the best surviving world lose exactly 1.
struct Verdict {
    enum class Tag { Consistent, Inconsistent };

    Tag tag;
    std::optional<StateVector> state;
    std::vector<Rat> stakes;
};

/// The set of probability values a query event can take across all states
/// extending a book: empty, or a closed interval [lo, hi] within [0,1]
/// whose endpoints are attained by the attached witness states.
struct ProbInterval {
    bool is_empty = false;
    Rat lo, hi;
    std::optional<StateVector> witness_lo, witness_hi;
};

/// Build the balance table of a nonempty book.
PayoffMatrix payoff_matrix(const Book& book);

/// The bookmaker's balance in every world for the given stakes: the
/// product payoff_matrix(book) * stakes.
std::vector<Rat> balances(const Book& book, const std::vector<Rat>& stakes);

/// Decide whether the book extends to a state.  The returned certificate
/// is re-verified internally before being returned (std::logic_error if
/// that ever fails — it would mean a solver fault, never a property of the
/// input).  Throws std::invalid_argument on an empty book.
///
/// When several states extend the book, the one returned is the solver's
/// deterministic vertex: one valid witness among many, stable across runs.
Verdict assess(const Book& book, std::uint64_t pivot_cap = kDefaultPivotCap);

/// Tight bounds on the probability of `query` over all states extending
/// the book, computed by one minimizing and one maximizing solve.  Empty
/// exactly when the book is inconsistent.  The book may be empty, in which
/// case the interval spans all states of the algebra.
ProbInterval fundamental_interval(const Book& book, const Event& query,
                                  std::uint64_t pivot_cap = kDefaultPivotCap);

/// A world in which every listed event holds, or std::nullopt if the
/// events cannot hold together.  The witness is the first such world in
/// enumeration order.  Equivalent to assessing the book that prices every
/// listed event at 1.  Throws std::invalid_argument on an empty list or
/// mixed algebras.
std::optional<World> logical_consistency(const std::vector<Event>& events);

/// Re-assess the book inside the algebra enlarged to `larger_universe`
/// (same background constraint, events re-interpreted through world
/// projection) and report whether the verdict tag is unchanged.  It always
/// should be: consistency does not depend on the ambient algebra.
/// `larger_universe` must contain every original variable in declaration
/// order.
bool ambient_invariance_check(const Book& book, const Universe& larger_universe,
                              std::size_t world_cap = kDefaultWorldCap);

/// Re-check a verdict by plain arithmetic: a Consistent state must
/// reproduce every price exactly; Inconsistent stakes must drive every
/// world balance to -1 or below.  Independent of the solver.
bool verify_verdict(const Book& book, const Verdict& verdict);

/// Re-check an interval: witnesses must extend the book and attain the
/// endpoints, and the endpoints must be ordered within [0,1].  An Empty
/// interval has no witness to check, so it is re-derived by assessing the
/// book.
bool verify_interval(const Book& book, const Event& query,
                     const ProbInterval& interval,
                     std::uint64_t pivot_cap = kDefaultPivotCap);

} // namespace dutchbook

#endif // DUTCHBOOK_COHERENCE_HPP
