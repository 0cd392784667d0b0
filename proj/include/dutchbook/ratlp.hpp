#ifndef DUTCHBOOK_RATLP_HPP
#define DUTCHBOOK_RATLP_HPP

#include "dutchbook/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dutchbook {

enum class Relation { LessEq, Equal, GreaterEq };

enum class Direction { Minimize, Maximize, FeasibilityOnly };

struct LinearConstraint {
    std::vector<Rat> coefficients; ///< length = number of variables
    Relation relation = Relation::Equal;
    Rat rhs;
};

/// Optional per-variable bounds; an absent side is unbounded.
struct VariableBounds {
    std::optional<Rat> lower;
    std::optional<Rat> upper;
};

/// A linear program in exact rationals.  Variables are free unless `bounds`
/// constrains them; `bounds` is either empty (all free) or one entry per
/// variable.  `objective` is ignored for feasibility-only programs.
struct LinearProgram {
    std::size_t num_variables = 0;
    Direction direction = Direction::FeasibilityOnly;
    std::vector<Rat> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<VariableBounds> bounds;
};

/// Result of solving a linear program.  Every arm carries an exact
/// certificate that `verify` re-checks by plain arithmetic, independently
/// of how the solver found it.
///
/// Certificate row order.  The multiplier vector of an Infeasible outcome
/// has one entry per row of the *augmented* system: first the declared
/// constraints in order, then a row "x_i >= lower_i" for each variable with
/// a lower bound (in variable order), then a row "x_i <= upper_i" for each
/// variable with an upper bound.
///
/// Certificate meaning.  Multipliers are >= 0 on inequality rows and
/// unrestricted on equality rows.  Orienting every row as a ">=" statement
/// (a <= row contributes its negation), the multiplied-and-summed system
/// must cancel every variable exactly and leave a positive right-hand
/// side: the contradiction "0 >= c" with c > 0.  solve() scales the
/// multipliers so that c is exactly 1.
struct LpOutcome {
    enum class Tag { Optimal, Feasible, Infeasible, Unbounded };

    Tag tag;
    std::vector<Rat> point;       ///< Optimal/Feasible; Unbounded: a feasible base point
    Rat value;                    ///< Optimal only: objective at `point`
    std::vector<Rat> multipliers; ///< Infeasible only: certificate, order as above
    std::vector<Rat> ray;         ///< Unbounded only: improving feasible direction
};

/// Upper limit on simplex pivots before solve() refuses with CapacityError.
inline constexpr std::uint64_t kDefaultPivotCap = 1000000;

/// Solve by the two-phase simplex method with Bland's least-index pivot
/// rule, entirely in exact rationals.  Deterministic: identical inputs
/// produce identical outcomes.  Minimize/Maximize programs yield Optimal,
/// Unbounded, or Infeasible; feasibility-only programs yield Feasible or
/// Infeasible.  Throws CapacityError if the pivot cap is exceeded and
/// std::invalid_argument on malformed input; never returns a wrong answer.
LpOutcome solve(const LinearProgram& lp,
                std::uint64_t pivot_cap = kDefaultPivotCap);

/// Re-check an outcome's certificate against the program by exact
/// arithmetic only: feasibility of points, the multiplier contradiction
/// for Infeasible, and feasibility-preservation plus strict objective
/// improvement of rays.  Pure; never throws on well-shaped input.
bool verify(const LinearProgram& lp, const LpOutcome& outcome);

/// The two mutually exclusive witnesses for a rational matrix M:
/// either stakes s with every coordinate of M·s strictly negative
/// (normalized so the largest coordinate is exactly -1), or a nonzero
/// nonnegative row vector u with u^T M = 0 (normalized to sum 1).
struct GordanResult {
    enum class Arm { NegativeStakes, NullMixture };

    Arm arm;
    std::vector<Rat> stakes;  ///< NegativeStakes: length = columns of M
    std::vector<Rat> mixture; ///< NullMixture: length = rows of M
};

/// Decide which side of the alternative holds for M (n x m, n,m >= 1) and
/// return the corresponding exact witness.  Internally solves the
/// feasibility program {M·s <= -1 coordinatewise}; its Farkas multipliers
/// are exactly the u of the other arm.  The returned witness is re-checked
/// before returning (std::logic_error on an internal solver fault).
GordanResult gordan(const std::vector<std::vector<Rat>>& M,
                    std::uint64_t pivot_cap = kDefaultPivotCap);

} // namespace dutchbook

#endif // DUTCHBOOK_RATLP_HPP
