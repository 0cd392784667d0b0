#include "dutchbook/algebra.hpp"

#include "dutchbook/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dutchbook {

namespace {

void collect_variables(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->kind == Formula::Kind::Var) out.insert(f->name);
    collect_variables(f->left, out);
    collect_variables(f->right, out);
}

void require_known_variables(const FormulaPtr& f, const Universe& universe) {
    std::set<std::string> vars;
    collect_variables(f, vars);
    for (const std::string& name : vars)
        if (std::find(universe.begin(), universe.end(), name) == universe.end())
            throw std::invalid_argument("unknown variable '" + name +
                                        "' for this algebra");
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a.get() != b.get())
        throw std::invalid_argument(
            "operands belong to different event algebras");
}

} // namespace

EventAlgebra::EventAlgebra(std::shared_ptr<const Universe> universe,
                           std::vector<World> worlds, FormulaPtr constraint)
    : universe_(std::move(universe)),
      worlds_(std::move(worlds)),
      constraint_(std::move(constraint)) {}

std::optional<std::size_t> EventAlgebra::index_of_bits(std::uint64_t bits) const {
    // Worlds are kept in increasing bit order, so binary search suffices.
    auto it = std::lower_bound(
        worlds_.begin(), worlds_.end(), bits,
        [](const World& w, std::uint64_t b) { return w.bits() < b; });
    if (it == worlds_.end() || it->bits() != bits) return std::nullopt;
    return static_cast<std::size_t>(it - worlds_.begin());
}

AlgebraPtr build_algebra(const Universe& universe, FormulaPtr constraint,
                         std::size_t cap) {
    std::vector<World> all = enumerate_worlds(universe, cap);
    if (constraint) require_known_variables(constraint, universe);

    std::vector<World> survivors;
    if (constraint) {
        for (const World& w : all)
            if (evaluate(constraint, w) == 1) survivors.push_back(w);
    } else {
        survivors = std::move(all);
    }
    if (survivors.empty())
        throw std::invalid_argument(
            "constraint is unsatisfiable: the algebra would be empty");

    auto shared_universe = std::make_shared<const Universe>(universe);
    return AlgebraPtr(new EventAlgebra(std::move(shared_universe),
                                       std::move(survivors),
                                       std::move(constraint)));
}

Event::Event(AlgebraPtr algebra, boost::dynamic_bitset<> members)
    : algebra_(std::move(algebra)), members_(std::move(members)) {
    if (!algebra_)
        throw std::invalid_argument("event requires an algebra");
    if (members_.size() != algebra_->size())
        throw std::invalid_argument(
            "event membership bitset does not match the algebra's world count");
}

Event Event::none(AlgebraPtr algebra) {
    std::size_t n = algebra->size();
    return Event(std::move(algebra), boost::dynamic_bitset<>(n));
}

Event Event::all(AlgebraPtr algebra) {
    std::size_t n = algebra->size();
    boost::dynamic_bitset<> bits(n);
    bits.set();
    return Event(std::move(algebra), bits);
}

Event Event::atom(AlgebraPtr algebra, std::size_t world_index) {
    std::size_t n = algebra->size();
    if (world_index >= n)
        throw std::invalid_argument("world index out of range");
    boost::dynamic_bitset<> bits(n);
    bits.set(world_index);
    return Event(std::move(algebra), bits);
}

Event event_of(const AlgebraPtr& algebra, const FormulaPtr& formula) {
    require_known_variables(formula, algebra->universe());
    const std::vector<World>& worlds = algebra->worlds();
    boost::dynamic_bitset<> bits(worlds.size());
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (evaluate(formula, worlds[i]) == 1) bits.set(i);
    return Event(algebra, std::move(bits));
}

Event meet(const Event& a, const Event& b) {
    require_same_algebra(a.algebra(), b.algebra());
    return Event(a.algebra(), a.members() & b.members());
}

Event join(const Event& a, const Event& b) {
    require_same_algebra(a.algebra(), b.algebra());
    return Event(a.algebra(), a.members() | b.members());
}

Event complement(const Event& a) {
    return Event(a.algebra(), ~a.members());
}

StateVector::StateVector(AlgebraPtr algebra, std::vector<Rat> masses)
    : algebra_(std::move(algebra)), masses_(std::move(masses)) {
    if (!algebra_)
        throw std::invalid_argument("state requires an algebra");
    if (masses_.size() != algebra_->size())
        throw std::invalid_argument(
            "state has the wrong number of masses for its algebra");
    Rat total = 0;
    for (const Rat& m : masses_) {
        if (m < 0)
            throw std::invalid_argument("state mass is negative");
        total += m;
    }
    if (total != 1)
        throw std::invalid_argument("state masses sum to " + to_string(total) +
                                    ", not 1");
}

Rat state_value(const StateVector& state, const Event& event) {
    require_same_algebra(state.algebra(), event.algebra());
    Rat total = 0;
    const std::vector<Rat>& masses = state.masses();
    for (std::size_t i = 0; i < masses.size(); ++i)
        if (event.contains(i)) total += masses[i];
    return total;
}

} // namespace dutchbook
