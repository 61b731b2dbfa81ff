#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

namespace detail {

// Regularized lower incomplete gamma P(a, x): series expansion for
// x < a + 1, continued fraction (Lentz) otherwise. Terms below 1e-12
// relative stop the iteration.
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw ParameterError("gamma_p: need x >= 0, a > 0");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    const double prefix = std::exp(-x + a * std::log(x) - lg);

    if (x < a + 1.0) {
        double ap = a;
        double term = 1.0 / a;
        double sum = term;
        for (int i = 0; i < 10000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-12) break;
        }
        return sum * prefix;
    }

    const double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-12) break;
    }
    return 1.0 - prefix * h;
}

}  // namespace detail

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
inline double chi2_pvalue(double q, int dof) {
    detail::require(q >= 0.0 && dof >= 1, "chi2_pvalue: need Q >= 0, dof >= 1");
    return 1.0 - detail::gamma_p(0.5 * dof, 0.5 * q);
}

// Sample autocorrelation without mean centering:
//   rho(k) = sum_{t=k+1}^T d_t d_{t-k} / sum_t d_t^2.
inline double autocorr(std::span<const double> changes, int lag) {
    const int n = static_cast<int>(changes.size());
    if (lag < 1 || lag >= n) throw ParameterError("autocorr: need series length > lag >= 1");
    double denom = 0.0;
    for (double d : changes) denom += d * d;
    if (denom <= 0.0) throw DegenerateSeries("autocorr: all-zero series");
    double num = 0.0;
    for (int t = lag; t < n; ++t) num += changes[t] * changes[t - lag];
    return num / denom;
}

struct MeanReversionReport {
    double q = 0.0;
    int lags = 0;
    double p_value = 1.0;
    std::vector<double> rho;   // rho(1) .. rho(L)
};

// Portmanteau (Ljung-Box) statistic of the daily-change series:
//   Q = T (T + 2) sum_{k=1}^L rho(k)^2 / (T - k),
// chi-square with L degrees of freedom under the pure-noise null. A small
// p-value marks structure, which for a trading portfolio is the reversion
// we are after.
inline MeanReversionReport portmanteau(std::span<const double> changes, int lags = 20) {
    const int n = static_cast<int>(changes.size());
    if (lags < 1 || n <= lags) throw ParameterError("portmanteau: need series length > lags >= 1");
    double denom = 0.0;
    for (double d : changes) denom += d * d;
    if (denom <= 0.0) throw DegenerateSeries("portmanteau: all-zero series");

    MeanReversionReport report;
    report.lags = lags;
    report.rho.resize(lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        double num = 0.0;
        for (int t = k; t < n; ++t) num += changes[t] * changes[t - k];
        const double rho = num / denom;
        report.rho[k - 1] = rho;
        q += rho * rho / (n - k);
    }
    report.q = static_cast<double>(n) * (n + 2.0) * q;
    report.p_value = chi2_pvalue(report.q, lags);
    return report;
}

}  // namespace osa
