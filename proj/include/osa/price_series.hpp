#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

// Aligned daily price panel: one row per date, one column per asset. ISO
// dates compare lexicographically, so ordering checks are plain string
// comparisons.
struct PriceSeries {
    std::vector<std::string> assets;
    std::vector<std::string> dates;
    std::vector<Vec> rows;

    int n_assets() const { return static_cast<int>(assets.size()); }
    int n_rows() const { return static_cast<int>(rows.size()); }

    void validate() const {
        if (assets.empty() || rows.empty()) throw DataError("price series: empty");
        if (dates.size() != rows.size()) throw DataError("price series: date/row count mismatch");
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (rows[t].size() != assets.size())
                throw DataError("price series: ragged row at index " + std::to_string(t));
            for (double p : rows[t])
                if (!std::isfinite(p) || p <= 0.0)
                    throw DataError("price series: nonpositive or non-finite price at row " +
                                    std::to_string(t));
            if (t > 0 && !(dates[t - 1] < dates[t]))
                throw DataError("price series: dates not strictly increasing at row " +
                                std::to_string(t));
        }
    }
};

// Divide each asset's prices by its full-sample mean. Off by default
// everywhere; exposed for experiments where raw price scales differ wildly.
inline PriceSeries rescale_per_asset(const PriceSeries& series) {
    PriceSeries out = series;
    const int n = series.n_assets();
    Vec means(n, 0.0);
    for (const Vec& row : series.rows)
        for (int i = 0; i < n; ++i) means[i] += row[i];
    for (double& m : means) m /= series.n_rows();
    for (Vec& row : out.rows)
        for (int i = 0; i < n; ++i) row[i] /= means[i];
    return out;
}

}  // namespace osa
