#pragma once

#include <algorithm>
#include <span>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

// Euclidean projection onto the probability simplex {w : w >= 0, sum w = 1}.
// Sort-based O(n log n) algorithm: with v sorted descending, find the largest
// rho with v_rho > (sum_{i<=rho} v_i - 1) / rho and clip at that threshold.
inline Vec project_simplex(std::span<const double> v) {
    detail::require(!v.empty(), "project_simplex: empty vector");
    detail::require(all_finite(v), "project_simplex: non-finite input");

    Vec sorted(v.begin(), v.end());
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());

    double cumsum = 0.0;
    double theta = sorted[0] - 1.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumsum += sorted[j];
        const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) theta = candidate;
    }

    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

}  // namespace osa
