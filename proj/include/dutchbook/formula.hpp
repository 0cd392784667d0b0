#ifndef DUTCHBOOK_FORMULA_HPP
#define DUTCHBOOK_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dutchbook {

/// Ordered list of declared variable names.  The order is significant: it
/// fixes the world enumeration order and hence every report layout.
using Universe = std::vector<std::string>;

struct Formula;

/// Formulas are immutable and freely shared; subtrees may appear in several
/// parents.  Use the factory functions below to build them.
using FormulaPtr = std::shared_ptr<const Formula>;

/// AST of a boolean event expression over named variables.
/// Connectives are exactly {not, and, or} plus the constants 0 and 1.
struct Formula {
    enum class Kind { Var, Const, Not, And, Or };

    Kind kind;
    std::string name;  ///< Var only: the variable name.
    bool value = false;///< Const only.
    FormulaPtr left;   ///< Not: the operand.  And/Or: left operand.
    FormulaPtr right;  ///< And/Or: right operand.

    static FormulaPtr var(std::string name);
    static FormulaPtr constant(bool value);
    static FormulaPtr negation(FormulaPtr operand);
    static FormulaPtr conjunction(FormulaPtr left, FormulaPtr right);
    static FormulaPtr disjunction(FormulaPtr left, FormulaPtr right);
};

/// Structural (tree-shape) equality, not logical equivalence.
bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

/// One possible outcome: a total {0,1} assignment to every declared
/// variable.  Worlds are produced by enumerate_worlds and are immutable.
class World {
public:
    World(std::shared_ptr<const Universe> universe, std::uint64_t bits);

    /// Number of declared variables.
    std::size_t size() const { return universe_->size(); }

    const Universe& universe() const { return *universe_; }

    /// Truth value (0 or 1) of the variable at `index` in declaration order.
    int value(std::size_t index) const;

    /// Truth value of the named variable; throws std::invalid_argument if
    /// the name is not declared.
    int value(const std::string& name) const;

    /// The raw assignment as a bit pattern; the first declared variable is
    /// the most significant bit, so enumeration order is numeric order.
    std::uint64_t bits() const { return bits_; }

    /// Bit string in declaration order, e.g. "010" for X1=0, X2=1, X3=0.
    std::string to_string() const;

    friend bool operator==(const World& a, const World& b) {
        return a.bits_ == b.bits_ && *a.universe_ == *b.universe_;
    }

private:
    std::shared_ptr<const Universe> universe_;
    std::uint64_t bits_;
};

/// Default limit on the number of declared variables (2^20 worlds).
inline constexpr std::size_t kDefaultWorldCap = 20;

/// Parse a formula over the given universe.
///
/// Grammar (ASCII, whitespace-insensitive):
///   expr := or ; or := and ('|' and)* ; and := not ('&' not)* ;
///   not  := '~' not | atom ; atom := ident | '0' | '1' | '(' expr ')'.
/// Identifiers match [A-Za-z][A-Za-z0-9_]*; precedence is ~ > & > |,
/// and chains of the same connective associate to the left.
///
/// Throws ParseError (with 1-based character position) on malformed text
/// or on a variable not present in the universe.
FormulaPtr parse(const std::string& text, const Universe& universe);

/// Render with the minimal parentheses that make parse(to_string(f)) return
/// a structurally identical tree.
std::string to_string(const FormulaPtr& formula);

/// Truth value of `formula` in world `w`: not/and/or are evaluated as
/// 1-x, min, max.  Every variable of the formula must be declared in `w`.
int evaluate(const FormulaPtr& formula, const World& w);

/// All 2^n total assignments, in increasing numeric order of the bit
/// pattern (first declared variable most significant): for (X1,X2) the
/// order is 00, 01, 10, 11.  Deterministic across runs.
///
/// Throws std::invalid_argument on an empty or duplicate-laden universe and
/// CapacityError when the universe exceeds `cap` variables.
std::vector<World> enumerate_worlds(const Universe& universe,
                                    std::size_t cap = kDefaultWorldCap);

/// For a full conjunction of literals covering every universe variable
/// exactly once (e.g. X1 & ~X2 & ~X3), count the non-negated and negated
/// conjuncts.  Throws std::invalid_argument if the formula is not such a
/// conjunction.
std::pair<std::size_t, std::size_t>
miniterm_counts(const FormulaPtr& formula, const Universe& universe);

/// Logical equivalence decided by comparing truth tables over the declared
/// universe.
bool equivalent(const FormulaPtr& a, const FormulaPtr& b,
                const Universe& universe, std::size_t cap = kDefaultWorldCap);

} // namespace dutchbook

#endif // DUTCHBOOK_FORMULA_HPP
