#pragma once

#include <functional>
#include <span>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

// Per-round loss depending on the last `memory` decisions. `window_loss`
// receives the window oldest-first; `unary_gradient` is the gradient of the
// unary restriction g(x) = f(x, ..., x).
struct MemoryLoss {
    int memory = 1;
    std::function<double(std::span<const Vec>)> window_loss;
    std::function<Vec(const Vec&)> unary_gradient;

    double unary(const Vec& x) const {
        std::vector<Vec> window(static_cast<std::size_t>(memory), x);
        return window_loss(window);
    }
};

}  // namespace osa
