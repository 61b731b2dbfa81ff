#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

// v_t = x_t^T y_t for a per-round weight sequence.
inline Vec portfolio_values(std::span<const Vec> weights, std::span<const Vec> prices) {
    detail::require(weights.size() == prices.size(), "portfolio_values: length mismatch");
    Vec values(prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t) values[t] = dot(weights[t], prices[t]);
    return values;
}

// Static-weight overload.
inline Vec portfolio_values(const Vec& weights, std::span<const Vec> prices) {
    Vec values(prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t) values[t] = dot(weights, prices[t]);
    return values;
}

inline Vec daily_changes(std::span<const double> values) {
    Vec d;
    if (values.size() > 1) {
        d.resize(values.size() - 1);
        for (std::size_t t = 1; t < values.size(); ++t) d[t - 1] = values[t] - values[t - 1];
    }
    return d;
}

// Fixed pairs-trading legs: +1/mean(A) shares of the first asset against
// -1/mean(B) shares of the second (equal dollar legs over the calibration
// window), normalized to unit l2 norm. The second asset is the short leg;
// the loss is sign-invariant so the orientation only fixes reporting.
inline Vec benchmark_weights(std::span<const Vec> prices,
                             std::optional<std::pair<int, int>> calibration = std::nullopt) {
    if (prices.empty() || prices.front().size() != 2)
        throw ParameterError("benchmark_weights: pairs setting requires exactly 2 assets");
    const int total = static_cast<int>(prices.size());
    const auto [begin, end] = calibration.value_or(std::make_pair(0, total));
    if (begin < 0 || end > total || begin >= end)
        throw ParameterError("benchmark_weights: bad calibration window");

    double mean_a = 0.0, mean_b = 0.0;
    for (int t = begin; t < end; ++t) {
        mean_a += prices[t][0];
        mean_b += prices[t][1];
    }
    mean_a /= end - begin;
    mean_b /= end - begin;
    if (mean_a <= 0.0 || mean_b <= 0.0)
        throw DataError("benchmark_weights: nonpositive average price");

    Vec w{1.0 / mean_a, -1.0 / mean_b};
    const double nrm = norm2(w);
    for (double& c : w) c /= nrm;
    return w;
}

struct FilteredPortfolio {
    std::vector<int> kept;   // indices of surviving assets
    Vec weights;             // renormalized weights of the kept assets
};

// Keep only coordinates with |x_i| >= threshold and renormalize to unit
// norm; isolates the strongly weighted subset of a portfolio.
inline FilteredPortfolio threshold_portfolio_filter(const Vec& x, double threshold) {
    if (threshold < 0.0) throw ParameterError("threshold_portfolio_filter: threshold must be >= 0");
    FilteredPortfolio out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) >= threshold) {
            out.kept.push_back(static_cast<int>(i));
            out.weights.push_back(x[i]);
        }
    }
    if (out.kept.empty())
        throw ParameterError("threshold_portfolio_filter: threshold too high, empty selection");
    const double nrm = norm2(out.weights);
    for (double& c : out.weights) c /= nrm;
    return out;
}

}  // namespace osa
