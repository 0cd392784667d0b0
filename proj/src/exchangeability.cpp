#include "dutchbook/exchangeability.hpp"

#include "dutchbook/error.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace dutchbook {

Int binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    // Multiplicative form: after step i the accumulator holds
    // C(n-k+i, i), so every division is exact.
    Int result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result *= Int(n - k + i);
        result /= Int(i);
    }
    return result;
}

Rat product_state_value(const Rat& p, std::size_t pos, std::size_t neg) {
    if (p < 0 || p > 1)
        throw std::invalid_argument("bias " + to_string(p) +
                                    " lies outside [0,1]");
    return pow_rat(p, pos) * pow_rat(Rat(1) - p, neg);
}

ExchangeableState::ExchangeableState(std::size_t n, std::vector<Rat> class_values)
    : n_(n), values_(std::move(class_values)) {
    if (n_ == 0)
        throw std::invalid_argument(
            "exchangeable state needs at least one variable");
    if (values_.size() != n_ + 1)
        throw std::invalid_argument(
            "expected one class value per count 0..n");
    Rat total = 0;
    Int coeff = 1; // C(n, k), updated incrementally
    for (std::size_t k = 0; k <= n_; ++k) {
        if (values_[k] < 0)
            throw std::invalid_argument("class value is negative");
        total += Rat(coeff) * values_[k];
        if (k < n_) {
            coeff *= Int(n_ - k);
            coeff /= Int(k + 1);
        }
    }
    if (total != 1)
        throw std::invalid_argument("class values weigh to " +
                                    to_string(total) + ", not 1");
}

MixtureWeights::MixtureWeights(std::size_t N, std::vector<Rat> weights)
    : N_(N), weights_(std::move(weights)) {
    if (N_ == 0)
        throw std::invalid_argument(
            "mixture weights need at least one variable");
    if (weights_.size() != N_ + 1)
        throw std::invalid_argument("expected one weight per count 0..N");
    Rat total = 0;
    for (const Rat& w : weights_) {
        if (w < 0)
            throw std::invalid_argument("mixture weight is negative");
        total += w;
    }
    if (total != 1)
        throw std::invalid_argument("mixture weights sum to " +
                                    to_string(total) + ", not 1");
}

ExchangeableState xi_state(std::size_t N, std::size_t K, std::size_t cap) {
    if (N == 0)
        throw std::invalid_argument("extremal state needs N >= 1");
    if (K > N)
        throw std::invalid_argument("class index K exceeds N");
    if (N > cap)
        throw CapacityError("N = " + std::to_string(N) +
                            " exceeds the exchangeable-state cap of " +
                            std::to_string(cap));
    std::vector<Rat> values(N + 1, Rat(0));
    values[K] = Rat(Int(1), binomial(N, K));
    return ExchangeableState(N, std::move(values));
}

ExchangeableState product_state(const Rat& p, std::size_t n, std::size_t cap) {
    if (n == 0)
        throw std::invalid_argument("product state needs n >= 1");
    if (n > cap)
        throw CapacityError("n = " + std::to_string(n) +
                            " exceeds the exchangeable-state cap of " +
                            std::to_string(cap));
    std::vector<Rat> values(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        values[k] = product_state_value(p, k, n - k);
    return ExchangeableState(n, std::move(values));
}

ExchangeableState restrict_state(const ExchangeableState& state,
                                 std::size_t n) {
    const std::size_t N = state.n();
    if (n == 0 || n > N)
        throw std::invalid_argument(
            "restriction target must satisfy 1 <= n <= N");
    const std::vector<Rat>& q = state.class_values();
    std::vector<Rat> restricted(n + 1, Rat(0));
    for (std::size_t k = 0; k <= n; ++k) {
        // Larger conjunctions below a fixed one with k plain variables:
        // the remaining N-n variables contribute C(N-n, K-k) of them for
        // each total plain count K.
        for (std::size_t K = k; K <= N - n + k; ++K) {
            if (q[K] == 0) continue;
            restricted[k] += Rat(binomial(N - n, K - k)) * q[K];
        }
    }
    return ExchangeableState(n, std::move(restricted));
}

MixtureWeights decompose(const ExchangeableState& state) {
    const std::size_t N = state.n();
    const std::vector<Rat>& q = state.class_values();
    std::vector<Rat> weights(N + 1, Rat(0));
    for (std::size_t K = 0; K <= N; ++K) {
        if (q[K] == 0) continue;
        weights[K] = Rat(binomial(N, K)) * q[K];
    }
    return MixtureWeights(N, std::move(weights));
}

ExchangeableState recompose(const MixtureWeights& weights) {
    const std::size_t N = weights.N();
    std::vector<Rat> values(N + 1, Rat(0));
    for (std::size_t K = 0; K <= N; ++K) {
        const Rat& w = weights.weight_at(K);
        if (w == 0) continue;
        values[K] = w / Rat(binomial(N, K));
    }
    return ExchangeableState(N, std::move(values));
}

MixtureApproximation::MixtureApproximation(MixtureWeights weights,
                                           std::size_t n,
                                           std::vector<Rat> restricted_values)
    : weights_(std::move(weights)), n_(n),
      restricted_(std::move(restricted_values)) {
    approximate_.reserve(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k)
        approximate_.push_back(evaluate(k, n_ - k));
    sup_error_ = 0;
    for (std::size_t k = 0; k <= n_; ++k) {
        Rat gap = restricted_[k] - approximate_[k];
        if (gap < 0) gap = -gap;
        if (gap > sup_error_) sup_error_ = gap;
    }
}

Rat MixtureApproximation::evaluate(std::size_t pos, std::size_t neg) const {
    const std::size_t N = weights_.N();
    Rat total = 0;
    for (std::size_t K = 0; K <= N; ++K) {
        const Rat& w = weights_.weight_at(K);
        if (w == 0) continue;
        Rat bias{Int(K), Int(N)};
        total += w * product_state_value(bias, pos, neg);
    }
    return total;
}

MixtureApproximation mixture_approximation(const ExchangeableState& state,
                                           std::size_t n) {
    if (n == 0 || n > state.n())
        throw std::invalid_argument(
            "approximation target must satisfy 1 <= n <= N");
    return MixtureApproximation(decompose(state), n,
                                restrict_state(state, n).class_values());
}

} // namespace dutchbook
