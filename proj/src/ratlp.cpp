#include "dutchbook/ratlp.hpp"

#include "dutchbook/error.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace dutchbook {

namespace {

constexpr std::size_t kNoColumn = std::numeric_limits<std::size_t>::max();

void validate(const LinearProgram& lp) {
    if (lp.direction != Direction::FeasibilityOnly &&
        lp.objective.size() != lp.num_variables)
        throw std::invalid_argument(
            "objective length does not match the variable count");
    for (const LinearConstraint& c : lp.constraints)
        if (c.coefficients.size() != lp.num_variables)
            throw std::invalid_argument(
                "constraint length does not match the variable count");
    if (!lp.bounds.empty() && lp.bounds.size() != lp.num_variables)
        throw std::invalid_argument(
            "bounds must be empty or give one entry per variable");
}

/// The system actually solved and certified: declared constraints first,
/// then lower-bound rows, then upper-bound rows (the order documented for
/// LpOutcome::multipliers).
std::vector<LinearConstraint> augmented_rows(const LinearProgram& lp) {
    std::vector<LinearConstraint> rows = lp.constraints;
    if (!lp.bounds.empty()) {
        for (std::size_t i = 0; i < lp.num_variables; ++i) {
            if (!lp.bounds[i].lower) continue;
            LinearConstraint row;
            row.coefficients.assign(lp.num_variables, Rat(0));
            row.coefficients[i] = 1;
            row.relation = Relation::GreaterEq;
            row.rhs = *lp.bounds[i].lower;
            rows.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < lp.num_variables; ++i) {
            if (!lp.bounds[i].upper) continue;
            LinearConstraint row;
            row.coefficients.assign(lp.num_variables, Rat(0));
            row.coefficients[i] = 1;
            row.relation = Relation::LessEq;
            row.rhs = *lp.bounds[i].upper;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}

/// +1 when a row participates in the combined certificate as stated,
/// -1 when its negation does (<= rows are combined as >= of the negation).
int certificate_direction(Relation rel) {
    return rel == Relation::LessEq ? -1 : 1;
}

/// Dense simplex tableau over exact rationals.  Row `rows` is the
/// reduced-cost row; column `cols` is the right-hand side.  The invariant
/// between pivots: basis columns are unit columns and every rhs is >= 0.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols, std::uint64_t pivot_cap)
        : rows_(rows), cols_(cols), pivot_cap_(pivot_cap),
          cells_(rows + 1, std::vector<Rat>(cols + 1, Rat(0))),
          basis_(rows, kNoColumn) {}

    Rat& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return cells_[r][c]; }
    Rat& rhs(std::size_t r) { return cells_[r][cols_]; }
    const Rat& rhs(std::size_t r) const { return cells_[r][cols_]; }
    Rat& cost(std::size_t c) { return cells_[rows_][c]; }
    std::size_t basis(std::size_t r) const { return basis_[r]; }
    void seed_basis(std::size_t r, std::size_t c) { basis_[r] = c; }

    /// Install a fresh objective row for the current basis: reduced costs
    /// c_j - z_j in every column.
    void set_costs(const std::vector<Rat>& cost) {
        for (std::size_t j = 0; j < cols_; ++j) cells_[rows_][j] = cost[j];
        cells_[rows_][cols_] = 0;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Rat& c = cost[basis_[r]];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                cells_[rows_][j] -= c * cells_[r][j];
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        if (++pivots_ > pivot_cap_)
            throw CapacityError("simplex pivot cap of " +
                                std::to_string(pivot_cap_) + " exceeded");
        std::vector<Rat>& prow_cells = cells_[prow];
        Rat inv = prow_cells[pcol];
        for (std::size_t j = 0; j <= cols_; ++j) prow_cells[j] /= inv;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == prow) continue;
            Rat factor = cells_[r][pcol];
            if (factor == 0) continue;
            std::vector<Rat>& row = cells_[r];
            for (std::size_t j = 0; j <= cols_; ++j)
                row[j] -= factor * prow_cells[j];
        }
        basis_[prow] = pcol;
    }

    /// Minimize the installed objective over columns [0, allowed_end) with
    /// Bland's least-index rule.  Returns kNoColumn at optimality, or the
    /// entering column that proves unboundedness.
    std::size_t minimize(std::size_t allowed_end) {
        for (;;) {
            std::size_t enter = kNoColumn;
            for (std::size_t j = 0; j < allowed_end; ++j) {
                if (cells_[rows_][j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNoColumn) return kNoColumn;

            std::size_t leave = kNoColumn;
            Rat best;
            for (std::size_t r = 0; r < rows_; ++r) {
                const Rat& coeff = cells_[r][enter];
                if (coeff <= 0) continue;
                Rat ratio = rhs(r) / coeff;
                if (leave == kNoColumn || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == kNoColumn) return enter;
            pivot(leave, enter);
        }
    }

    std::size_t row_count() const { return rows_; }

private:
    std::size_t rows_, cols_;
    std::uint64_t pivot_cap_;
    std::uint64_t pivots_ = 0;
    std::vector<std::vector<Rat>> cells_;
    std::vector<std::size_t> basis_;
};

} // namespace

LpOutcome solve(const LinearProgram& lp, std::uint64_t pivot_cap) {
    validate(lp);
    const std::vector<LinearConstraint> rows = augmented_rows(lp);
    const std::size_t V = lp.num_variables;
    const std::size_t R = rows.size();

    // Standard form: each free variable x_i is split into p_i - q_i with
    // p, q >= 0; every row gets its sign flipped if needed so the rhs is
    // nonnegative, then a slack (<=) or surplus (>=) column, then an
    // artificial starting basis column.
    std::size_t slack_count = 0;
    for (const LinearConstraint& row : rows)
        if (row.relation != Relation::Equal) ++slack_count;
    const std::size_t slack_begin = 2 * V;
    const std::size_t art_begin = slack_begin + slack_count;
    const std::size_t total_cols = art_begin + R;

    Tableau tab(R, total_cols, pivot_cap);
    std::vector<int> row_sign(R, 1);
    std::size_t next_slack = slack_begin;
    for (std::size_t r = 0; r < R; ++r) {
        const LinearConstraint& row = rows[r];
        int sign = row.rhs < 0 ? -1 : 1;
        row_sign[r] = sign;
        Relation rel = row.relation;
        if (sign < 0) {
            if (rel == Relation::LessEq)
                rel = Relation::GreaterEq;
            else if (rel == Relation::GreaterEq)
                rel = Relation::LessEq;
        }
        for (std::size_t i = 0; i < V; ++i) {
            Rat a = sign * row.coefficients[i];
            tab.at(r, i) = a;
            tab.at(r, V + i) = -a;
        }
        if (rel == Relation::LessEq)
            tab.at(r, next_slack++) = 1;
        else if (rel == Relation::GreaterEq)
            tab.at(r, next_slack++) = -1;
        tab.at(r, art_begin + r) = 1;
        tab.rhs(r) = sign * row.rhs;
        tab.seed_basis(r, art_begin + r);
    }

    // Phase 1: minimize the sum of artificials.
    std::vector<Rat> phase1_cost(total_cols, Rat(0));
    for (std::size_t r = 0; r < R; ++r) phase1_cost[art_begin + r] = 1;
    tab.set_costs(phase1_cost);
    if (tab.minimize(total_cols) != kNoColumn)
        throw std::logic_error(
            "phase-1 objective cannot be unbounded: solver fault");

    Rat infeasibility = 0;
    for (std::size_t r = 0; r < R; ++r)
        if (tab.basis(r) >= art_begin) infeasibility += tab.rhs(r);

    LpOutcome out;
    if (infeasibility > 0) {
        // Farkas certificate from the phase-1 duals.  The artificial column
        // of row r is the r-th unit column, so its z-value reads off the
        // dual y_r; mapping through the row's sign flip and certificate
        // direction yields the declared-order multipliers.
        out.tag = LpOutcome::Tag::Infeasible;
        out.multipliers.resize(R);
        Rat combined_rhs = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rat y = Rat(1) - tab.cost(art_begin + r);
            int dir = certificate_direction(rows[r].relation);
            out.multipliers[r] = Rat(row_sign[r] * dir) * y;
            combined_rhs += out.multipliers[r] * Rat(dir) * rows[r].rhs;
        }
        if (combined_rhs <= 0)
            throw std::logic_error(
                "infeasibility certificate failed to close: solver fault");
        for (Rat& m : out.multipliers) m /= combined_rhs;
        if (!verify(lp, out))
            throw std::logic_error(
                "solver emitted an invalid infeasibility certificate");
        return out;
    }

    // Feasible.  Drive any leftover artificial out of the basis; a row in
    // which no structural column can replace it is redundant and inert.
    for (std::size_t r = 0; r < R; ++r) {
        if (tab.basis(r) < art_begin) continue;
        for (std::size_t j = 0; j < art_begin; ++j) {
            if (tab.at(r, j) != 0) {
                tab.pivot(r, j);
                break;
            }
        }
    }

    auto extract_point = [&]() {
        std::vector<Rat> standard(total_cols, Rat(0));
        for (std::size_t r = 0; r < R; ++r) standard[tab.basis(r)] = tab.rhs(r);
        std::vector<Rat> x(V);
        for (std::size_t i = 0; i < V; ++i) x[i] = standard[i] - standard[V + i];
        return x;
    };

    if (lp.direction == Direction::FeasibilityOnly) {
        out.tag = LpOutcome::Tag::Feasible;
        out.point = extract_point();
        if (!verify(lp, out))
            throw std::logic_error("solver emitted an infeasible point");
        return out;
    }

    // Phase 2 over structural and slack columns only.
    std::vector<Rat> phase2_cost(total_cols, Rat(0));
    for (std::size_t i = 0; i < V; ++i) {
        Rat c = lp.objective[i];
        if (lp.direction == Direction::Maximize) c = -c;
        phase2_cost[i] = c;
        phase2_cost[V + i] = -c;
    }
    tab.set_costs(phase2_cost);
    std::size_t unbounded_col = tab.minimize(art_begin);

    out.point = extract_point();
    if (unbounded_col != kNoColumn) {
        out.tag = LpOutcome::Tag::Unbounded;
        std::vector<Rat> direction(total_cols, Rat(0));
        direction[unbounded_col] = 1;
        for (std::size_t r = 0; r < R; ++r)
            direction[tab.basis(r)] = -tab.at(r, unbounded_col);
        out.ray.resize(V);
        for (std::size_t i = 0; i < V; ++i)
            out.ray[i] = direction[i] - direction[V + i];
    } else {
        out.tag = LpOutcome::Tag::Optimal;
        out.value = dot(lp.objective, out.point);
    }
    if (!verify(lp, out))
        throw std::logic_error("solver emitted an invalid certificate");
    return out;
}

bool verify(const LinearProgram& lp, const LpOutcome& outcome) {
    try {
        validate(lp);
    } catch (const std::invalid_argument&) {
        return false;
    }
    const std::vector<LinearConstraint> rows = augmented_rows(lp);
    const std::size_t V = lp.num_variables;

    auto satisfies = [&](const std::vector<Rat>& x) {
        if (x.size() != V) return false;
        for (const LinearConstraint& row : rows) {
            Rat lhs = dot(row.coefficients, x);
            switch (row.relation) {
            case Relation::LessEq:
                if (lhs > row.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != row.rhs) return false;
                break;
            case Relation::GreaterEq:
                if (lhs < row.rhs) return false;
                break;
            }
        }
        return true;
    };

    switch (outcome.tag) {
    case LpOutcome::Tag::Optimal:
        if (lp.direction == Direction::FeasibilityOnly) return false;
        return satisfies(outcome.point) &&
               outcome.value == dot(lp.objective, outcome.point);
    case LpOutcome::Tag::Feasible:
        return satisfies(outcome.point);
    case LpOutcome::Tag::Infeasible: {
        if (outcome.multipliers.size() != rows.size()) return false;
        std::vector<Rat> combined(V, Rat(0));
        Rat combined_rhs = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rat& m = outcome.multipliers[r];
            if (rows[r].relation != Relation::Equal && m < 0) return false;
            Rat signed_m = m * Rat(certificate_direction(rows[r].relation));
            for (std::size_t i = 0; i < V; ++i)
                combined[i] += signed_m * rows[r].coefficients[i];
            combined_rhs += signed_m * rows[r].rhs;
        }
        for (const Rat& c : combined)
            if (c != 0) return false;
        return combined_rhs > 0;
    }
    case LpOutcome::Tag::Unbounded: {
        if (lp.direction == Direction::FeasibilityOnly) return false;
        if (!satisfies(outcome.point)) return false;
        if (outcome.ray.size() != V) return false;
        for (const LinearConstraint& row : rows) {
            Rat step = dot(row.coefficients, outcome.ray);
            switch (row.relation) {
            case Relation::LessEq:
                if (step > 0) return false;
                break;
            case Relation::Equal:
                if (step != 0) return false;
                break;
            case Relation::GreaterEq:
                if (step < 0) return false;
                break;
            }
        }
        Rat improvement = dot(lp.objective, outcome.ray);
        return lp.direction == Direction::Maximize ? improvement > 0
                                                   : improvement < 0;
    }
    }
    return false;
}

GordanResult gordan(const std::vector<std::vector<Rat>>& M,
                    std::uint64_t pivot_cap) {
    const std::size_t n = M.size();
    if (n == 0)
        throw std::invalid_argument("matrix needs at least one row");
    const std::size_t m = M[0].size();
    if (m == 0)
        throw std::invalid_argument("matrix needs at least one column");
    for (const std::vector<Rat>& row : M)
        if (row.size() != m)
            throw std::invalid_argument("matrix rows have unequal lengths");

    // Feasibility of {M s <= -1 coordinatewise}: a solution is the stakes
    // arm; the Farkas multipliers of an infeasible system combine the rows
    // to 0 = positive, i.e. they are a nonnegative left null vector of M
    // that solve() has already scaled to sum exactly 1.
    LinearProgram lp;
    lp.num_variables = m;
    lp.direction = Direction::FeasibilityOnly;
    lp.constraints.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        lp.constraints.push_back(
            LinearConstraint{M[i], Relation::LessEq, Rat(-1)});

    LpOutcome out = solve(lp, pivot_cap);
    GordanResult result;
    if (out.tag == LpOutcome::Tag::Feasible) {
        result.arm = GordanResult::Arm::NegativeStakes;
        result.stakes = std::move(out.point);
        // Rescale so the largest coordinate of M s is exactly -1.
        Rat top = dot(M[0], result.stakes);
        for (std::size_t i = 1; i < n; ++i) {
            Rat v = dot(M[i], result.stakes);
            if (v > top) top = v;
        }
        if (top >= 0)
            throw std::logic_error("stakes witness fails to be negative");
        for (Rat& s : result.stakes) s /= -top;
        for (std::size_t i = 0; i < n; ++i)
            if (dot(M[i], result.stakes) > -1)
                throw std::logic_error("stakes witness fails after scaling");
    } else if (out.tag == LpOutcome::Tag::Infeasible) {
        result.arm = GordanResult::Arm::NullMixture;
        result.mixture = std::move(out.multipliers);
        Rat total = 0;
        for (const Rat& u : result.mixture) {
            if (u < 0) throw std::logic_error("mixture witness is negative");
            total += u;
        }
        if (total != 1)
            throw std::logic_error("mixture witness does not sum to 1");
        for (std::size_t j = 0; j < m; ++j) {
            Rat col = 0;
            for (std::size_t i = 0; i < n; ++i)
                col += result.mixture[i] * M[i][j];
            if (col != 0)
                throw std::logic_error("mixture witness misses the null space");
        }
    } else {
        throw std::logic_error("feasibility program returned an optimum");
    }
    return result;
}

} // namespace dutchbook
