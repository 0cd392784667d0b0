#include "dutchbook/formula.hpp"

#include "dutchbook/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace dutchbook {

FormulaPtr Formula::var(std::string name) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Var;
    f->name = std::move(name);
    return f;
}

FormulaPtr Formula::constant(bool value) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Const;
    f->value = value;
    return f;
}

FormulaPtr Formula::negation(FormulaPtr operand) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->left = std::move(operand);
    return f;
}

FormulaPtr Formula::conjunction(FormulaPtr left, FormulaPtr right) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::And;
    f->left = std::move(left);
    f->right = std::move(right);
    return f;
}

FormulaPtr Formula::disjunction(FormulaPtr left, FormulaPtr right) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Or;
    f->left = std::move(left);
    f->right = std::move(right);
    return f;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Formula::Kind::Var: return a->name == b->name;
    case Formula::Kind::Const: return a->value == b->value;
    case Formula::Kind::Not: return structurally_equal(a->left, b->left);
    case Formula::Kind::And:
    case Formula::Kind::Or:
        return structurally_equal(a->left, b->left) &&
               structurally_equal(a->right, b->right);
    }
    return false;
}

World::World(std::shared_ptr<const Universe> universe, std::uint64_t bits)
    : universe_(std::move(universe)), bits_(bits) {}

int World::value(std::size_t index) const {
    std::size_t n = universe_->size();
    if (index >= n)
        throw std::invalid_argument("variable index out of range");
    return static_cast<int>((bits_ >> (n - 1 - index)) & 1ULL);
}

int World::value(const std::string& name) const {
    const Universe& u = *universe_;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] == name) return value(i);
    throw std::invalid_argument("variable '" + name +
                                "' is not declared in this world");
}

std::string World::to_string() const {
    std::size_t n = universe_->size();
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if (value(i)) s[i] = '1';
    return s;
}

namespace {

/// Recursive-descent parser for the formula grammar.  Reports 1-based
/// character positions in error messages.
class FormulaParser {
public:
    FormulaParser(const std::string& text, const Universe& universe)
        : text_(text), universe_(universe) {}

    FormulaPtr run() {
        FormulaPtr f = parse_or();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

private:
    const std::string& text_;
    const Universe& universe_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("syntax error at position " + std::to_string(pos_ + 1) +
                             ": " + what,
                         pos_ + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (consume('|'))
            f = Formula::disjunction(f, parse_and());
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_not();
        while (consume('&'))
            f = Formula::conjunction(f, parse_not());
        return f;
    }

    FormulaPtr parse_not() {
        if (consume('~'))
            return Formula::negation(parse_not());
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("expected a variable, '0', '1', '~', or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            FormulaPtr f = parse_or();
            if (!consume(')'))
                fail("expected ')'");
            return f;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            return Formula::constant(c == '1');
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_ident();
        fail("expected a variable, '0', '1', '~', or '('");
    }

    FormulaPtr parse_ident() {
        std::size_t start = pos_;
        ++pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        std::string name = text_.substr(start, pos_ - start);
        if (std::find(universe_.begin(), universe_.end(), name) ==
            universe_.end())
            throw ParseError("unknown variable '" + name + "' at position " +
                                 std::to_string(start + 1),
                             start + 1);
        return Formula::var(std::move(name));
    }
};

/// Binding strength used by the printer: or < and < not < leaf.
int precedence(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    default: return 4;
    }
}

void print_into(const FormulaPtr& f, std::string& out, int parent_prec,
                bool right_operand) {
    int prec = precedence(*f);
    // Chains of one connective associate to the left, so a same-precedence
    // child needs parentheses exactly when it sits on the right.
    bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    if (parens) out += '(';
    switch (f->kind) {
    case Formula::Kind::Var:
        out += f->name;
        break;
    case Formula::Kind::Const:
        out += f->value ? '1' : '0';
        break;
    case Formula::Kind::Not:
        out += '~';
        print_into(f->left, out, prec, false);
        break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        print_into(f->left, out, prec, false);
        out += (f->kind == Formula::Kind::And) ? " & " : " | ";
        print_into(f->right, out, prec, true);
        break;
    }
    if (parens) out += ')';
}

void check_universe(const Universe& universe) {
    if (universe.empty())
        throw std::invalid_argument("universe must declare at least one variable");
    std::set<std::string> seen;
    for (const std::string& name : universe) {
        if (name.empty())
            throw std::invalid_argument("universe contains an empty variable name");
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate variable '" + name +
                                        "' in universe");
    }
}

} // namespace

FormulaPtr parse(const std::string& text, const Universe& universe) {
    return FormulaParser(text, universe).run();
}

std::string to_string(const FormulaPtr& formula) {
    std::string out;
    print_into(formula, out, 0, false);
    return out;
}

int evaluate(const FormulaPtr& formula, const World& w) {
    switch (formula->kind) {
    case Formula::Kind::Var: return w.value(formula->name);
    case Formula::Kind::Const: return formula->value ? 1 : 0;
    case Formula::Kind::Not: return 1 - evaluate(formula->left, w);
    case Formula::Kind::And:
        return std::min(evaluate(formula->left, w), evaluate(formula->right, w));
    case Formula::Kind::Or:
        return std::max(evaluate(formula->left, w), evaluate(formula->right, w));
    }
    throw std::logic_error("corrupt formula node");
}

std::vector<World> enumerate_worlds(const Universe& universe, std::size_t cap) {
    check_universe(universe);
    std::size_t n = universe.size();
    if (n > cap)
        throw CapacityError("universe has " + std::to_string(n) +
                            " variables, exceeding the cap of " +
                            std::to_string(cap));
    if (n >= 63)
        throw CapacityError("universe too large to enumerate");
    auto shared = std::make_shared<const Universe>(universe);
    std::vector<World> worlds;
    std::uint64_t count = 1ULL << n;
    worlds.reserve(count);
    for (std::uint64_t bits = 0; bits < count; ++bits)
        worlds.emplace_back(shared, bits);
    return worlds;
}

std::pair<std::size_t, std::size_t>
miniterm_counts(const FormulaPtr& formula, const Universe& universe) {
    check_universe(universe);
    // Flatten the conjunction spine, then require each conjunct to be a
    // literal and each universe variable to appear exactly once.
    std::vector<const Formula*> stack{formula.get()};
    std::vector<const Formula*> literals;
    while (!stack.empty()) {
        const Formula* f = stack.back();
        stack.pop_back();
        if (f->kind == Formula::Kind::And) {
            stack.push_back(f->right.get());
            stack.push_back(f->left.get());
        } else {
            literals.push_back(f);
        }
    }
    std::set<std::string> seen;
    std::size_t pos = 0, neg = 0;
    for (const Formula* lit : literals) {
        const Formula* core = lit;
        bool negated = false;
        if (core->kind == Formula::Kind::Not) {
            negated = true;
            core = core->left.get();
        }
        if (core->kind != Formula::Kind::Var)
            throw std::invalid_argument(
                "not a miniterm: conjunct is not a literal");
        if (!seen.insert(core->name).second)
            throw std::invalid_argument("not a miniterm: variable '" +
                                        core->name + "' occurs twice");
        if (std::find(universe.begin(), universe.end(), core->name) ==
            universe.end())
            throw std::invalid_argument("not a miniterm: variable '" +
                                        core->name + "' is not in the universe");
        if (negated)
            ++neg;
        else
            ++pos;
    }
    if (seen.size() != universe.size())
        throw std::invalid_argument(
            "not a miniterm: some universe variable is missing");
    return {pos, neg};
}

bool equivalent(const FormulaPtr& a, const FormulaPtr& b,
                const Universe& universe, std::size_t cap) {
    for (const World& w : enumerate_worlds(universe, cap))
        if (evaluate(a, w) != evaluate(b, w)) return false;
    return true;
}

} // namespace dutchbook
