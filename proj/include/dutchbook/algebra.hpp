#ifndef DUTCHBOOK_ALGEBRA_HPP
#define DUTCHBOOK_ALGEBRA_HPP

#include "dutchbook/formula.hpp"
#include "dutchbook/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace dutchbook {

class EventAlgebra;

/// Algebras are immutable and shared; the pointer doubles as the identity
/// token that events and states are checked against, so two algebras built
/// from identical inputs are still distinct owners.
using AlgebraPtr = std::shared_ptr<const EventAlgebra>;

/// A finite boolean algebra presented by its atoms: the worlds over a
/// declared universe that survive an optional background constraint.
/// Every event is a set of surviving worlds and every state is a rational
/// mass distribution over them.
class EventAlgebra {
public:
    const Universe& universe() const { return *universe_; }

    /// Surviving worlds in enumeration order (increasing bit pattern).
    const std::vector<World>& worlds() const { return worlds_; }

    /// Number of surviving worlds (the dimension of the state simplex).
    std::size_t size() const { return worlds_.size(); }

    /// Background constraint, or null when every assignment survives.
    const FormulaPtr& constraint() const { return constraint_; }

    /// Index of the surviving world with the given bit pattern, if any.
    std::optional<std::size_t> index_of_bits(std::uint64_t bits) const;

private:
    EventAlgebra(std::shared_ptr<const Universe> universe,
                 std::vector<World> worlds, FormulaPtr constraint);

    friend AlgebraPtr build_algebra(const Universe&, FormulaPtr, std::size_t);

    std::shared_ptr<const Universe> universe_;
    std::vector<World> worlds_;
    FormulaPtr constraint_;
};

/// Build the algebra over `universe` whose atoms are the assignments
/// satisfying `constraint` (all assignments when the constraint is null).
///
/// Throws std::invalid_argument when no assignment survives (the would-be
/// algebra has 0 = 1) and CapacityError when the universe exceeds `cap`.
AlgebraPtr build_algebra(const Universe& universe,
                         FormulaPtr constraint = nullptr,
                         std::size_t cap = kDefaultWorldCap);

/// An event: a subset of the surviving worlds of one algebra, stored as a
/// bitset indexed by surviving-world position.
class Event {
public:
    Event(AlgebraPtr algebra, boost::dynamic_bitset<> members);

    /// The impossible event (empty set).
    static Event none(AlgebraPtr algebra);
    /// The sure event (all surviving worlds).
    static Event all(AlgebraPtr algebra);
    /// The atom concentrated on one surviving world.
    static Event atom(AlgebraPtr algebra, std::size_t world_index);

    const AlgebraPtr& algebra() const { return algebra_; }
    const boost::dynamic_bitset<>& members() const { return members_; }
    bool contains(std::size_t world_index) const { return members_.test(world_index); }
    std::size_t count() const { return members_.count(); }

    /// Equal when owned by the same algebra object and containing the same
    /// worlds.
    friend bool operator==(const Event& a, const Event& b) {
        return a.algebra_.get() == b.algebra_.get() && a.members_ == b.members_;
    }

private:
    AlgebraPtr algebra_;
    boost::dynamic_bitset<> members_;
};

/// The event named by a formula: membership bit of world w is the truth
/// value of the formula in w.  Throws ParseError-free errors only: an
/// unknown variable surfaces as std::invalid_argument.
Event event_of(const AlgebraPtr& algebra, const FormulaPtr& formula);

/// Boolean operations as set operations on world-sets.  Both operands must
/// belong to the same algebra object (std::invalid_argument otherwise).
Event meet(const Event& a, const Event& b);
Event join(const Event& a, const Event& b);
Event complement(const Event& a);

/// A state: one exact nonnegative rational mass per surviving world,
/// summing to exactly 1.  Construction validates both conditions.
class StateVector {
public:
    StateVector(AlgebraPtr algebra, std::vector<Rat> masses);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<Rat>& masses() const { return masses_; }

    friend bool operator==(const StateVector& a, const StateVector& b) {
        return a.algebra_.get() == b.algebra_.get() && a.masses_ == b.masses_;
    }

private:
    AlgebraPtr algebra_;
    std::vector<Rat> masses_;
};

/// Probability of `event` under `state`: the sum of the masses of the
/// member worlds (the scalar product of mass vector and indicator).
Rat state_value(const StateVector& state, const Event& event);

} // namespace dutchbook

#endif // DUTCHBOOK_ALGEBRA_HPP
