#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "osa/errors.hpp"
#include "osa/rng.hpp"

namespace osa {

struct RunStats {
    double p_value = 1.0;
    double revenue = 0.0;
};

struct Aggregate {
    int n_runs = 0;
    double mean_p = 0.0;
    double std_p = 0.0;
    double mean_revenue = 0.0;
    double std_revenue = 0.0;
    std::vector<RunStats> runs;
};

// Seeded fan-out over independent runs; `run` maps a derived seed to that
// run's statistics. Aggregation is order-independent; the standard
// deviation is the population form so a single run reports 0.
template <typename RunFn>
Aggregate monte_carlo_report(RunFn&& run, int n_runs, std::uint64_t seed_base) {
    if (n_runs < 1) throw ParameterError("monte_carlo_report: need n_runs >= 1");
    Aggregate agg;
    agg.n_runs = n_runs;
    agg.runs.reserve(n_runs);
    for (int i = 0; i < n_runs; ++i)
        agg.runs.push_back(run(Rng::derive_seed(seed_base, static_cast<std::uint64_t>(i))));

    // shifted two-pass moments: exact zero spread for identical runs
    const double base_p = agg.runs.front().p_value;
    const double base_r = agg.runs.front().revenue;
    double sp = 0.0, sr = 0.0;
    for (const RunStats& r : agg.runs) {
        sp += r.p_value - base_p;
        sr += r.revenue - base_r;
    }
    const double shift_p = sp / n_runs;
    const double shift_r = sr / n_runs;
    agg.mean_p = base_p + shift_p;
    agg.mean_revenue = base_r + shift_r;

    double vp = 0.0, vr = 0.0;
    for (const RunStats& r : agg.runs) {
        vp += (r.p_value - base_p - shift_p) * (r.p_value - base_p - shift_p);
        vr += (r.revenue - base_r - shift_r) * (r.revenue - base_r - shift_r);
    }
    agg.std_p = std::sqrt(vp / n_runs);
    agg.std_revenue = std::sqrt(vr / n_runs);
    return agg;
}

}  // namespace osa
