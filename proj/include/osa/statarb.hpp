#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/loss_window.hpp"
#include "osa/ogd_memory.hpp"
#include "osa/rng.hpp"
#include "osa/spectrahedron.hpp"

namespace osa {

struct OsaParams {
    double lambda = 2.0;
    int memory = 5;
    std::optional<double> eta;          // default D / (sqrt(m) G T^(3/4)), D = sqrt(2)
    std::optional<double> grad_bound;   // default 1.1 * max_t ||A_t - B_t||_F
    std::optional<double> switch_prob;  // default 1 / (m sqrt(T))
    std::uint64_t seed = 0;
};

// The deterministic half of the algorithm: per-round loss windows and the
// projected-gradient path X_t through the spectrahedron. The gradient of
// h_t is the constant matrix A_t - B_t, so the path does not depend on the
// sampled vectors and can be shared across replicate chains.
struct OsaTrajectory {
    std::vector<LossWindow> windows;                  // one per round, early rounds partial
    std::vector<SymMat> relaxed;                      // X_t
    std::vector<EigenDecomposition> decompositions;   // of X_t, for sampling
    double eta = 0.0;
    double grad_bound = 0.0;
    double switch_prob = 0.0;
    double lambda = 0.0;
    int memory = 0;
};

inline OsaTrajectory osa_trajectory(std::span<const Vec> prices, const OsaParams& params) {
    const int horizon = static_cast<int>(prices.size());
    if (params.memory < 1) throw ParameterError("osa: memory must be >= 1");
    if (horizon < params.memory) throw ParameterError("osa: need at least m price rows");
    const int n = static_cast<int>(prices.front().size());
    if (n < 1) throw ParameterError("osa: need at least one asset");

    OsaTrajectory traj;
    traj.lambda = params.lambda;
    traj.memory = params.memory;
    traj.windows.reserve(horizon);
    for (int t = 0; t < horizon; ++t) {
        const int lo = std::max(0, t - params.memory + 1);
        traj.windows.push_back(
            build_loss_window(prices.subspan(lo, static_cast<std::size_t>(t - lo + 1)), params.lambda));
    }

    double grad_bound = params.grad_bound.value_or(0.0);
    if (!params.grad_bound) {
        for (const LossWindow& w : traj.windows)
            grad_bound = std::max(grad_bound, w.gradient().frobenius());
        grad_bound *= 1.1;
    }
    traj.grad_bound = grad_bound;
    traj.eta = params.eta.value_or(osa_eta(std::sqrt(2.0), grad_bound, params.memory, horizon));
    traj.switch_prob = params.switch_prob.value_or(
        1.0 / (params.memory * std::sqrt(static_cast<double>(horizon))));
    if (traj.switch_prob <= 0.0 || traj.switch_prob > 1.0)
        throw ParameterError("osa: switch probability must be in (0, 1]");

    traj.relaxed.reserve(horizon);
    traj.decompositions.reserve(horizon);
    SymMat x = SymMat::identity(n);
    x *= 1.0 / n;
    traj.relaxed.push_back(x);
    traj.decompositions.push_back(sym_eigen(x));
    for (int t = 1; t < horizon; ++t) {
        SymMat moved = traj.relaxed.back() - traj.eta * traj.windows[t].gradient();
        SpectrahedronProjection proj = project_spectrahedron_full(moved);
        traj.relaxed.push_back(std::move(proj.point.matrix));
        traj.decompositions.push_back(std::move(proj.decomposition));
    }
    return traj;
}

struct OsaResult {
    std::vector<Vec> weights;             // played x_t, unit norm
    std::vector<SymMat> relaxed;          // X_t
    std::vector<double> losses;           // f_t on the played window
    std::vector<std::uint8_t> resampled;  // 1 where the lazy schedule drew afresh
    int switch_count = 0;                 // number of resample events (rounds t >= 1)
    double eta = 0.0;
    double grad_bound = 0.0;
    double switch_prob = 0.0;
    double lambda = 0.0;
    int memory = 0;
};

namespace detail {

inline double played_window_loss(const std::vector<Vec>& weights, std::span<const Vec> prices, int t,
                                 int memory, double lambda) {
    const int lo = std::max(0, t - memory + 1);
    return eval_f(std::span<const Vec>(weights).subspan(lo, static_cast<std::size_t>(t - lo + 1)),
                  prices.subspan(lo, static_cast<std::size_t>(t - lo + 1)), lambda);
}

}  // namespace detail

// Lazily switching online statistical arbitrage: X follows projected
// gradient steps on h_t, the played vector is kept with probability
// 1 - 1/(m sqrt(T)) and otherwise redrawn as an eigenvector of the current
// X_t with probability equal to its eigenvalue.
inline OsaResult osa_run(std::span<const Vec> prices, const OsaParams& params) {
    const OsaTrajectory traj = osa_trajectory(prices, params);
    const int horizon = static_cast<int>(prices.size());

    OsaResult result;
    result.eta = traj.eta;
    result.grad_bound = traj.grad_bound;
    result.switch_prob = traj.switch_prob;
    result.lambda = traj.lambda;
    result.memory = traj.memory;
    result.relaxed = traj.relaxed;
    result.weights.reserve(horizon);
    result.losses.reserve(horizon);
    result.resampled.assign(horizon, 0);

    Rng rng(params.seed);
    result.weights.push_back(sample_eigvec(traj.decompositions[0], rng));
    result.losses.push_back(
        detail::played_window_loss(result.weights, prices, 0, traj.memory, traj.lambda));

    for (int t = 1; t < horizon; ++t) {
        Vec x = result.weights.back();
        if (rng.uniform() < traj.switch_prob) {
            x = sample_eigvec(traj.decompositions[t], rng);
            result.resampled[t] = 1;
            ++result.switch_count;
        }
        result.weights.push_back(std::move(x));
        result.losses.push_back(
            detail::played_window_loss(result.weights, prices, t, traj.memory, traj.lambda));
    }
    return result;
}

struct HindsightWeights {
    Vec x;                  // unit-norm minimizer over the sphere
    double objective = 0.0; // x^T M x, the minimum eigenvalue of M
    Vec spectrum;           // all eigenvalues of M = sum (A_t - B_t), descending
};

// Best fixed unit-norm weights in hindsight. The objective
// sum_{t=m}^T g_t(x) equals x^T M x for M = sum (A_t - B_t), so the exact
// minimizer over the unit sphere is the eigenvector of the smallest
// eigenvalue.
inline HindsightWeights offline_optimal_weights(std::span<const Vec> prices, double lambda, int memory) {
    if (static_cast<int>(prices.size()) < memory)
        throw ParameterError("offline_optimal_weights: need at least m price rows");
    const int n = static_cast<int>(prices.front().size());
    SymMat total(n);
    for (std::size_t t = static_cast<std::size_t>(memory) - 1; t < prices.size(); ++t) {
        const LossWindow w =
            build_loss_window(prices.subspan(t - memory + 1, static_cast<std::size_t>(memory)), lambda);
        total += w.gradient();
    }
    EigenDecomposition ed = sym_eigen(total);
    Vec x = ed.vectors.back();
    const double nrm = norm2(x);
    for (double& c : x) c /= nrm;
    detail::canonical_sign(x);
    return HindsightWeights{std::move(x), ed.values.back(), std::move(ed.values)};
}

// Monte Carlo check of how far the relaxed path drifts from the played
// chain: || X_t - mean_r[x_t x_t^T] ||_F per round, averaging `replicates`
// independent x-chains over the shared (deterministic) X trajectory.
inline std::vector<double> relaxation_drift(std::span<const Vec> prices, const OsaParams& params,
                                      int replicates) {
    if (replicates < 1) throw ParameterError("relaxation_drift: need replicates >= 1");
    const OsaTrajectory traj = osa_trajectory(prices, params);
    const int horizon = static_cast<int>(prices.size());
    const int n = static_cast<int>(prices.front().size());

    std::vector<SymMat> moment(horizon, SymMat(n));
    for (int r = 0; r < replicates; ++r) {
        Rng rng(Rng::derive_seed(params.seed, static_cast<std::uint64_t>(r)));
        Vec x = sample_eigvec(traj.decompositions[0], rng);
        for (int t = 0; t < horizon; ++t) {
            if (t > 0 && rng.uniform() < traj.switch_prob) x = sample_eigvec(traj.decompositions[t], rng);
            SymMat& acc = moment[t];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc(i, j) += x[i] * x[j];
        }
    }

    std::vector<double> gaps(horizon);
    for (int t = 0; t < horizon; ++t) {
        moment[t] *= 1.0 / replicates;
        gaps[t] = frobenius_distance(traj.relaxed[t], moment[t]);
    }
    return gaps;
}

}  // namespace osa
