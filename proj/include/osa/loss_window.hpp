#pragma once

#include <span>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

// Quadratic forms of the mean-reversion loss over one price window:
//   g(x) = x^T A x - x^T B x,  A = s s^T with s the window sum,
//   B = lambda * sum_i y_i y_i^T.
// Minimizing g keeps the window sum of portfolio values near zero while
// pushing the per-step variance up.
struct LossWindow {
    int memory = 0;          // number of price vectors in the window
    double lambda = 0.0;
    Vec window_sum;          // s
    SymMat squared_sum;      // A
    SymMat variance_term;    // B

    SymMat gradient() const { return squared_sum - variance_term; }
};

// Prices oldest-first; accepts fewer than the nominal m vectors so the first
// rounds of a run can use partial windows.
inline LossWindow build_loss_window(std::span<const Vec> prices, double lambda) {
    detail::require(!prices.empty(), "build_loss_window: empty window");
    if (lambda < 0.0) throw ParameterError("build_loss_window: lambda must be >= 0");
    const std::size_t n = prices.front().size();
    for (const Vec& y : prices)
        detail::require(y.size() == n, "build_loss_window: price dimension mismatch");

    LossWindow w;
    w.memory = static_cast<int>(prices.size());
    w.lambda = lambda;
    w.window_sum.assign(n, 0.0);
    w.variance_term = SymMat(static_cast<int>(n));
    for (const Vec& y : prices) {
        axpy(1.0, y, w.window_sum);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                w.variance_term(static_cast<int>(i), static_cast<int>(j)) += lambda * y[i] * y[j];
    }
    w.squared_sum = SymMat::outer(w.window_sum);
    return w;
}

// f(x_{t-m+1}..x_t; y_{t-m+1}..y_t) = (sum_i x_i^T y_i)^2 - lambda * sum_i (x_i^T y_i)^2,
// both windows oldest-first and of equal length.
inline double eval_f(std::span<const Vec> weights, std::span<const Vec> prices, double lambda) {
    detail::require(weights.size() == prices.size(), "eval_f: window length mismatch");
    detail::require(!weights.empty(), "eval_f: empty window");
    double total = 0.0;
    double squares = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double v = dot(weights[i], prices[i]);
        total += v;
        squares += v * v;
    }
    return total * total - lambda * squares;
}

inline double eval_g(const Vec& x, const LossWindow& w) {
    return w.squared_sum.quadratic_form(x) - w.variance_term.quadratic_form(x);
}

// Linear relaxation h(X) = <X, A - B>; the gradient in X is the constant
// matrix A - B.
inline double eval_h(const SymMat& x, const LossWindow& w) {
    detail::require(x.dim() == w.squared_sum.dim(), "eval_h: dimension mismatch");
    return x.inner(w.squared_sum) - x.inner(w.variance_term);
}

inline SymMat grad_h(const LossWindow& w) { return w.gradient(); }

}  // namespace osa
