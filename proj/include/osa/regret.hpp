#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "osa/decision_set.hpp"
#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/memory_loss.hpp"
#include "osa/rng.hpp"

namespace osa {

struct RegretTrace {
    std::vector<double> algorithm_losses;    // f_t on the played window, full windows only
    std::vector<double> comparator_losses;   // f_t(x*, ..., x*)
    std::vector<double> cumulative;          // running regret
    Vec comparator;
    bool comparator_converged = true;

    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// R_T = sum_{t=m}^{T} f_t(window) - f_t(x*, ..., x*); rounds without a full
// window are excluded.
inline RegretTrace empirical_regret(const std::vector<Vec>& decisions, const Vec& comparator,
                                    const std::vector<MemoryLoss>& losses) {
    detail::require(decisions.size() == losses.size(), "empirical_regret: length mismatch");
    detail::require(!losses.empty(), "empirical_regret: empty run");
    const int m = losses.front().memory;

    RegretTrace trace;
    trace.comparator = comparator;
    double running = 0.0;
    std::vector<Vec> window;
    for (std::size_t t = static_cast<std::size_t>(m) - 1; t < decisions.size(); ++t) {
        window.assign(decisions.begin() + (t - m + 1), decisions.begin() + t + 1);
        const double alg = losses[t].window_loss(window);
        const double cmp = losses[t].unary(comparator);
        trace.algorithm_losses.push_back(alg);
        trace.comparator_losses.push_back(cmp);
        running += alg - cmp;
        trace.cumulative.push_back(running);
    }
    return trace;
}

struct ComparatorResult {
    Vec x;
    double objective = 0.0;
    bool converged = true;
};

namespace detail {

inline Vec summed_gradient(const std::vector<MemoryLoss>& losses, const Vec& x) {
    Vec g(x.size(), 0.0);
    for (const MemoryLoss& l : losses) axpy(1.0, l.unary_gradient(x), g);
    return g;
}

inline double summed_value(const std::vector<MemoryLoss>& losses, const Vec& x) {
    double s = 0.0;
    for (const MemoryLoss& l : losses) s += l.unary(x);
    return s;
}

// Curvature estimate of sum_t g_t along its dominant direction, by power
// iteration on finite differences of the summed gradient.
inline double curvature_estimate(const std::vector<MemoryLoss>& losses, const Vec& x0) {
    const double delta = 1e-4;
    Vec v(x0.size(), 1.0 / std::sqrt(static_cast<double>(x0.size())));
    const Vec g0 = summed_gradient(losses, x0);
    double lambda = 0.0;
    for (int it = 0; it < 15; ++it) {
        Vec probe = x0;
        axpy(delta, v, probe);
        Vec w = summed_gradient(losses, probe) - g0;
        for (double& c : w) c /= delta;
        lambda = norm2(w);
        if (lambda < 1e-14) return 0.0;
        for (double& c : w) c /= lambda;
        v = std::move(w);
    }
    return lambda;
}

}  // namespace detail

// Best fixed decision in hindsight: projected gradient descent on
// sum_t g_t from the set centroid, step 1 / curvature, stopping when the
// gradient-mapping norm falls below tol. Deterministic.
inline ComparatorResult offline_comparator(const std::vector<MemoryLoss>& losses, const DecisionSet& set,
                                           double tol = 1e-8, int max_iter = 100000) {
    if (losses.empty()) throw ParameterError("offline_comparator: empty loss sequence");

    Vec x = set.centroid();
    const double curvature = detail::curvature_estimate(losses, x);
    double step;
    if (curvature > 1e-12) {
        step = 1.0 / (1.1 * curvature);
    } else {
        const double g0 = norm2(detail::summed_gradient(losses, x));
        step = g0 > 1e-12 ? set.diameter() / g0 : 1.0;
    }

    double value = detail::summed_value(losses, x);
    Vec best_x = x;
    double best_value = value;
    bool converged = false;

    for (int it = 0; it < max_iter; ++it) {
        Vec g = detail::summed_gradient(losses, x);
        if (!all_finite(g)) throw NumericalFault("offline_comparator: non-finite gradient");
        Vec moved = x;
        axpy(-step, g, moved);
        Vec next = set.project(moved);
        const double mapping = norm2(next - x) / step;

        const double next_value = detail::summed_value(losses, next);
        if (next_value > value + 1e-12 * (1.0 + std::abs(value))) {
            step *= 0.5;   // overshot: the curvature estimate was low
            if (step < 1e-300) break;
            continue;
        }
        x = std::move(next);
        value = next_value;
        if (value < best_value) {
            best_value = value;
            best_x = x;
        }
        if (mapping < tol) {
            converged = true;
            break;
        }
    }
    return ComparatorResult{std::move(best_x), best_value, converged};
}

// Empirical Lipschitz constant of the unary losses: max gradient norm over
// sampled set members, padded by 10%.
inline double estimate_gradient_bound(const std::vector<MemoryLoss>& losses, const DecisionSet& set,
                                      int samples, Rng& rng) {
    if (samples < 1) throw ParameterError("estimate_gradient_bound: need samples >= 1");
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Vec p = set.sample(rng);
        for (const MemoryLoss& l : losses) worst = std::max(worst, norm2(l.unary_gradient(p)));
    }
    return 1.1 * worst;
}

}  // namespace osa
