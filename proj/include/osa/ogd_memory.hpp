#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "osa/decision_set.hpp"
#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/memory_loss.hpp"

namespace osa {

// Step size eta = D / (G * sqrt(m T)), the choice that gives the
// 2 G D sqrt(m T) regret bound for projected gradient descent on the unary
// losses.
inline double ogd_eta(double diameter, double grad_bound, int memory, int horizon) {
    if (diameter <= 0.0 || grad_bound <= 0.0)
        throw ParameterError("ogd_eta: diameter and gradient bound must be positive");
    if (memory < 1 || horizon < memory) throw ParameterError("ogd_eta: need m >= 1, T >= m");
    return diameter / (grad_bound * std::sqrt(static_cast<double>(memory) * horizon));
}

// Step size eta = D / (sqrt(m) * G * T^(3/4)) used by the lazily switching
// relaxation, trading a T^(3/4) regret rate for bounded decision drift.
inline double osa_eta(double diameter, double grad_bound, int memory, int horizon) {
    if (diameter <= 0.0 || grad_bound <= 0.0)
        throw ParameterError("osa_eta: diameter and gradient bound must be positive");
    if (memory < 1 || horizon < memory) throw ParameterError("osa_eta: need m >= 1, T >= m");
    return diameter /
           (std::sqrt(static_cast<double>(memory)) * grad_bound * std::pow(static_cast<double>(horizon), 0.75));
}

struct OgdState {
    Vec x;                      // current decision
    std::vector<Vec> history;   // up to m-1 previous decisions, oldest first
    double eta = 0.0;
    int step = 0;               // completed update count
};

inline OgdState make_ogd_state(const DecisionSet& set, double eta, std::optional<Vec> x1 = std::nullopt) {
    OgdState s;
    s.x = x1 ? std::move(*x1) : set.centroid();
    s.eta = eta;
    return s;
}

// One projected gradient step x <- proj(x - eta * grad g(x)), shifting the
// decision history by one.
inline OgdState ogd_memory_step(const OgdState& state, const MemoryLoss& loss, const DecisionSet& set) {
    Vec grad = loss.unary_gradient(state.x);
    detail::require(grad.size() == state.x.size(), "ogd_memory_step: gradient dimension mismatch");
    if (!all_finite(grad)) throw NumericalFault("ogd_memory_step: non-finite gradient");

    OgdState next;
    next.eta = state.eta;
    next.step = state.step + 1;

    Vec moved = state.x;
    axpy(-state.eta, grad, moved);
    next.x = set.project(moved);

    next.history = state.history;
    next.history.push_back(state.x);
    const std::size_t keep = static_cast<std::size_t>(loss.memory > 0 ? loss.memory - 1 : 0);
    while (next.history.size() > keep) next.history.erase(next.history.begin());
    return next;
}

struct OgdRun {
    std::vector<Vec> decisions;   // x_t actually played, one per round
    std::vector<double> losses;   // f_t on the played window (padded with x_1 while t < m)
};

// Algorithm: play x_t, suffer f_t on the true decision window, update by a
// projected gradient step on g_t. The first m-1 windows are padded with the
// initial decision; regret accounting later ignores those rounds.
inline OgdRun run_ogd_memory(const std::vector<MemoryLoss>& losses, const DecisionSet& set, double eta,
                             std::optional<Vec> x1 = std::nullopt) {
    if (losses.empty()) throw ParameterError("run_ogd_memory: empty loss sequence");
    const int m = losses.front().memory;
    for (const MemoryLoss& l : losses)
        detail::require(l.memory == m, "run_ogd_memory: losses disagree on memory length");

    OgdState state = make_ogd_state(set, eta, std::move(x1));
    const Vec initial = state.x;

    OgdRun run;
    run.decisions.reserve(losses.size());
    run.losses.reserve(losses.size());

    std::vector<Vec> window;
    for (std::size_t t = 0; t < losses.size(); ++t) {
        run.decisions.push_back(state.x);

        window.clear();
        for (int i = m - 1; i >= 1; --i) {
            const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - i;
            window.push_back(idx >= 0 ? run.decisions[idx] : initial);
        }
        window.push_back(state.x);
        run.losses.push_back(losses[t].window_loss(window));

        state = ogd_memory_step(state, losses[t], set);
    }
    return run;
}

}  // namespace osa
