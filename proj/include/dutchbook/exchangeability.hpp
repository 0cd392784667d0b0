#ifndef DUTCHBOOK_EXCHANGEABILITY_HPP
#define DUTCHBOOK_EXCHANGEABILITY_HPP

#include "dutchbook/rational.hpp"

#include <cstddef>
#include <vector>

namespace dutchbook {

/// Default limit on the number of variables of an exchangeable state: the
/// binomial coefficients involved grow to hundreds of digits but stay
/// tractable up to a few thousand.
inline constexpr std::size_t kDefaultExchangeableCap = 4096;

/// Exact binomial coefficient; 0 when k > n.  Computed multiplicatively
/// with exact intermediate division, so it never overflows or rounds.
Int binomial(std::size_t n, std::size_t k);

/// Value of the bias-p product state on any full conjunction with `pos`
/// plain and `neg` negated variables: p^pos * (1-p)^neg, with the
/// convention 0^0 = 1 (so bias 0 and bias 1 are the two point masses).
/// Throws std::invalid_argument when p is outside [0,1].
Rat product_state_value(const Rat& p, std::size_t pos, std::size_t neg);

/// A state over n variables whose value on a full conjunction depends only
/// on the number k of plain (non-negated) variables in it.  Stored as the
/// class-value vector (q_0,...,q_n); validity requires every q_k >= 0 and
/// sum_k C(n,k) * q_k = 1 exactly (each class has C(n,k) conjunctions).
class ExchangeableState {
public:
    ExchangeableState(std::size_t n, std::vector<Rat> class_values);

    std::size_t n() const { return n_; }

    /// q_0..q_n: value on any conjunction with k plain variables.
    const std::vector<Rat>& class_values() const { return values_; }
    const Rat& value_at(std::size_t k) const { return values_.at(k); }

    friend bool operator==(const ExchangeableState& a,
                           const ExchangeableState& b) {
        return a.n_ == b.n_ && a.values_ == b.values_;
    }

private:
    std::size_t n_;
    std::vector<Rat> values_;
};

/// Convex weights over the extremal exchangeable states of N variables:
/// (lambda_0,...,lambda_N), nonnegative, summing to exactly 1.
class MixtureWeights {
public:
    MixtureWeights(std::size_t N, std::vector<Rat> weights);

    std::size_t N() const { return N_; }
    const std::vector<Rat>& weights() const { return weights_; }
    const Rat& weight_at(std::size_t K) const { return weights_.at(K); }

    friend bool operator==(const MixtureWeights& a, const MixtureWeights& b) {
        return a.N_ == b.N_ && a.weights_ == b.weights_;
    }

private:
    std::size_t N_;
    std::vector<Rat> weights_;
};

/// The extremal exchangeable state on N variables that spreads mass 1
/// uniformly over the C(N,K) conjunctions with exactly K plain variables:
/// q_K = 1/C(N,K) and every other class value 0.
/// Throws std::invalid_argument for K > N or N = 0 and CapacityError when
/// N exceeds `cap`.
ExchangeableState xi_state(std::size_t N, std::size_t K,
                           std::size_t cap = kDefaultExchangeableCap);

/// The bias-p product state on n variables as an exchangeable state:
/// q_k = p^k * (1-p)^(n-k).
ExchangeableState product_state(const Rat& p, std::size_t n,
                                std::size_t cap = kDefaultExchangeableCap);

/// The restriction of a state on N variables to its first n variables:
/// q'_k = sum over K from k to N-n+k of C(N-n, K-k) * q_K, which counts
/// the larger conjunctions lying below a fixed smaller one.  Exact; the
/// result is again a valid exchangeable state.  Requires 1 <= n <= N.
ExchangeableState restrict_state(const ExchangeableState& state,
                                 std::size_t n);

/// Weights expressing the state as a convex combination of extremal
/// states: lambda_K = C(N,K) * q_K.  recompose(decompose(s)) == s exactly.
MixtureWeights decompose(const ExchangeableState& state);

/// The exchangeable state sum_K lambda_K * xi_{N,K}: q_K = lambda_K/C(N,K).
ExchangeableState recompose(const MixtureWeights& weights);

/// The product-state mixture that approximates a state: it replaces each
/// extremal component xi_{N,K} by the product state of bias K/N, keeping
/// the decomposition weights.  `sup_error` is the exact largest deviation
/// from the true restriction across the n+1 value classes.
class MixtureApproximation {
public:
    MixtureApproximation(MixtureWeights weights, std::size_t n,
                         std::vector<Rat> restricted_values);

    const MixtureWeights& weights() const { return weights_; }
    std::size_t n() const { return n_; }

    /// sum_K lambda_K * (K/N)^pos * (1-K/N)^neg, the mixture's value on a
    /// conjunction with `pos` plain and `neg` negated variables.
    Rat evaluate(std::size_t pos, std::size_t neg) const;

    /// evaluate(k, n-k) for k = 0..n.
    const std::vector<Rat>& approximate_class_values() const {
        return approximate_;
    }
    /// The exact restriction the mixture is approximating.
    const std::vector<Rat>& restricted_class_values() const {
        return restricted_;
    }
    /// max_k |restricted_k - approximate_k|, exact.
    const Rat& sup_error() const { return sup_error_; }

private:
    MixtureWeights weights_;
    std::size_t n_;
    std::vector<Rat> restricted_;
    std::vector<Rat> approximate_;
    Rat sup_error_;
};

/// Decompose `state`, restrict it to n variables, and compare the exact
/// restriction with the product-state mixture of the same weights.
/// Requires 1 <= n <= state.n().
MixtureApproximation mixture_approximation(const ExchangeableState& state,
                                           std::size_t n);

} // namespace dutchbook

#endif // DUTCHBOOK_EXCHANGEABILITY_HPP
