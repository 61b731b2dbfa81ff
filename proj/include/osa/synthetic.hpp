#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "osa/errors.hpp"
#include "osa/price_series.hpp"
#include "osa/rng.hpp"

namespace osa {

enum class SyntheticKind { WhiteNoise, Ar1, OuPair, CointegratedPair };

inline const char* to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::WhiteNoise: return "white-noise";
        case SyntheticKind::Ar1: return "ar1";
        case SyntheticKind::OuPair: return "ou-pair";
        case SyntheticKind::CointegratedPair: return "cointegrated-pair";
    }
    return "?";
}

inline SyntheticKind synthetic_kind_from_string(const std::string& s) {
    if (s == "white-noise") return SyntheticKind::WhiteNoise;
    if (s == "ar1") return SyntheticKind::Ar1;
    if (s == "ou-pair") return SyntheticKind::OuPair;
    if (s == "cointegrated-pair") return SyntheticKind::CointegratedPair;
    throw ParameterError("unknown synthetic kind: " + s);
}

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::CointegratedPair;
    int horizon = 2000;
    int n_assets = 1;               // white-noise / ar1 width; pair kinds always emit 2
    double level = 100.0;           // base price
    double volatility = 0.01;       // per-step log volatility of the driving noise / walk
    double reversion_speed = 0.1;   // OU kappa
    double spread_vol = 0.005;      // OU stationary standard deviation
    double correlation = 0.0;       // ou-pair leg correlation
    double ar_coeff = 0.6;          // AR(1) phi
    double beta = 1.0;              // cointegration scale of leg B against leg A
    std::uint64_t seed = 0;

    void validate() const {
        if (horizon < 2) throw ParameterError("synthetic: horizon must be >= 2");
        if (n_assets < 1) throw ParameterError("synthetic: n_assets must be >= 1");
        if (level <= 0.0) throw ParameterError("synthetic: level must be > 0");
        if (volatility < 0.0) throw ParameterError("synthetic: volatility must be >= 0");
        if (spread_vol < 0.0) throw ParameterError("synthetic: spread volatility must be >= 0");
        if (!(std::abs(ar_coeff) < 1.0)) throw ParameterError("synthetic: AR coefficient must be in (-1, 1)");
        if (reversion_speed <= 0.0) throw ParameterError("synthetic: reversion speed must be > 0");
        if (std::abs(correlation) > 1.0) throw ParameterError("synthetic: correlation must be in [-1, 1]");
        if (beta <= 0.0) throw ParameterError("synthetic: beta must be > 0");
    }
};

namespace detail {

inline std::string iso_date(int day_index) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{year{2000} / January / 3} + days{day_index}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace detail

// Deterministic price generators standing in for historical data.
//   white-noise        log p_t = log level + vol * eps_t
//   ar1                log p_t = log level + z_t,  z_t = phi z_{t-1} + vol eps_t
//   ou-pair            two correlated OU log-price legs around `level`
//   cointegrated-pair  leg A is a geometric random walk, leg B = beta A exp(z_t)
//                      with z an OU process, so the log spread mean-reverts
inline PriceSeries generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    PriceSeries series;
    const int horizon = spec.horizon;
    series.dates.reserve(horizon);
    for (int t = 0; t < horizon; ++t) series.dates.push_back(detail::iso_date(t));
    series.rows.assign(horizon, Vec());

    const double log_level = std::log(spec.level);
    switch (spec.kind) {
        case SyntheticKind::WhiteNoise: {
            for (int i = 0; i < spec.n_assets; ++i) series.assets.push_back("S" + std::to_string(i + 1));
            for (int t = 0; t < horizon; ++t) {
                Vec row(spec.n_assets);
                for (int i = 0; i < spec.n_assets; ++i)
                    row[i] = std::exp(log_level + spec.volatility * rng.normal());
                series.rows[t] = std::move(row);
            }
            break;
        }
        case SyntheticKind::Ar1: {
            for (int i = 0; i < spec.n_assets; ++i) series.assets.push_back("S" + std::to_string(i + 1));
            const double stationary =
                spec.volatility / std::sqrt(1.0 - spec.ar_coeff * spec.ar_coeff);
            Vec z(spec.n_assets);
            for (double& v : z) v = stationary * rng.normal();
            for (int t = 0; t < horizon; ++t) {
                if (t > 0)
                    for (double& v : z) v = spec.ar_coeff * v + spec.volatility * rng.normal();
                Vec row(spec.n_assets);
                for (int i = 0; i < spec.n_assets; ++i) row[i] = std::exp(log_level + z[i]);
                series.rows[t] = std::move(row);
            }
            break;
        }
        case SyntheticKind::OuPair: {
            series.assets = {"A", "B"};
            const double decay = std::exp(-spec.reversion_speed);
            const double shock = spec.spread_vol * std::sqrt(1.0 - decay * decay);
            const double rho = spec.correlation;
            const double i1 = rng.normal();
            const double i2 = rho * i1 + std::sqrt(1.0 - rho * rho) * rng.normal();
            double z1 = spec.spread_vol * i1;
            double z2 = spec.spread_vol * i2;
            for (int t = 0; t < horizon; ++t) {
                if (t > 0) {
                    const double e1 = rng.normal();
                    const double e2 = rho * e1 + std::sqrt(1.0 - rho * rho) * rng.normal();
                    z1 = decay * z1 + shock * e1;
                    z2 = decay * z2 + shock * e2;
                }
                series.rows[t] = {std::exp(log_level + z1), std::exp(log_level + z2)};
            }
            break;
        }
        case SyntheticKind::CointegratedPair: {
            series.assets = {"A", "B"};
            const double decay = std::exp(-spec.reversion_speed);
            const double shock = spec.spread_vol * std::sqrt(1.0 - decay * decay);
            double log_a = log_level;
            double z = spec.spread_vol * rng.normal();
            for (int t = 0; t < horizon; ++t) {
                if (t > 0) {
                    log_a += spec.volatility * rng.normal();
                    z = decay * z + shock * rng.normal();
                }
                const double a = std::exp(log_a);
                series.rows[t] = {a, spec.beta * a * std::exp(z)};
            }
            break;
        }
    }
    series.validate();
    return series;
}

}  // namespace osa
