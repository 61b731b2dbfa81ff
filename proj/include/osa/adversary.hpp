#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/memory_loss.hpp"
#include "osa/rng.hpp"

namespace osa {

struct AdversarySuite {
    std::vector<MemoryLoss> losses;
    double grad_bound = 0.0;    // exact sup of the unary gradient norm on the unit ball
};

// Sign-flipping quadratic adversary on the unit ball:
//   f_t(w_1..w_m) = || mean(w) - c_t ||^2,  c_t = s_t * c,  s_t in {-1, +1}.
// The unary restriction g_t(x) = ||x - c_t||^2 is convex with gradient
// 2 (x - c_t), so G = 2 (1 + ||c||) on the unit ball; the joint gradient
// norm is G / sqrt(m), within the same bound.
inline AdversarySuite make_quadratic_adversary(int dim, int memory, int horizon, std::uint64_t seed,
                                               double center_norm = 0.75) {
    if (dim < 1 || memory < 1 || horizon < 1)
        throw ParameterError("make_quadratic_adversary: need dim, m, T >= 1");

    Rng rng(seed);
    Vec c(dim);
    for (double& v : c) v = rng.normal();
    const double nrm = norm2(c);
    for (double& v : c) v *= (nrm > 0.0 ? center_norm / nrm : 0.0);

    AdversarySuite suite;
    suite.grad_bound = 2.0 * (1.0 + center_norm);
    suite.losses.reserve(horizon);
    for (int t = 0; t < horizon; ++t) {
        Vec center = c;
        if (rng.uniform() < 0.5)
            for (double& v : center) v = -v;

        MemoryLoss loss;
        loss.memory = memory;
        loss.window_loss = [center, memory](std::span<const Vec> window) {
            detail::require(static_cast<int>(window.size()) == memory,
                            "quadratic adversary: wrong window length");
            Vec mean(center.size(), 0.0);
            for (const Vec& w : window) axpy(1.0 / memory, w, mean);
            return dot(mean - center, mean - center);
        };
        loss.unary_gradient = [center](const Vec& x) {
            Vec g = x - center;
            for (double& v : g) v *= 2.0;
            return g;
        };
        suite.losses.push_back(std::move(loss));
    }
    return suite;
}

}  // namespace osa
