#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "osa/backtest.hpp"
#include "osa/csv.hpp"
#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/monte_carlo.hpp"
#include "osa/stats.hpp"

namespace osa {

struct RegretSection {
    std::vector<double> trace;            // cumulative regret per full-window round
    double comparator_objective = 0.0;
    std::vector<double> loss_spectrum;    // eigenvalues of the summed loss matrix
};

struct RunReport {
    // meta
    std::string algorithm;
    double lambda = 0.0;
    int memory = 0;
    double eta = 0.0;
    int horizon = 0;
    int n_assets = 0;
    std::uint64_t seed = 0;
    double grad_bound = 0.0;
    double diameter = 0.0;
    // per-round series
    std::vector<Vec> weights;
    std::vector<double> losses;
    Vec values;   // played portfolio value per round
    // sections, present where the producing command computed them
    std::optional<RegretSection> regret;
    std::optional<MeanReversionReport> portmanteau;
    std::optional<TradeLog> backtest;
    std::optional<Aggregate> aggregate;
};

inline nlohmann::json to_json(const TradeLog& log) {
    nlohmann::json trades = nlohmann::json::array();
    for (const TradeEvent& e : log.events)
        trades.push_back({{"round", e.round},
                          {"action", e.action == TradeAction::Buy ? "buy" : "sell"},
                          {"price", e.price}});
    return {{"revenue", log.revenue},
            {"trades", std::move(trades)},
            {"open_position", log.open_position},
            {"open_mark", log.open_mark}};
}

inline nlohmann::json to_json(const MeanReversionReport& r) {
    return {{"Q", r.q}, {"L", r.lags}, {"p_value", r.p_value}, {"rho", r.rho}};
}

inline nlohmann::json to_json(const Aggregate& agg) {
    return {{"n_runs", agg.n_runs},
            {"mean_p", agg.mean_p},
            {"std_p", agg.std_p},
            {"mean_revenue", agg.mean_revenue},
            {"std_revenue", agg.std_revenue}};
}

inline nlohmann::json to_json(const RunReport& report) {
    nlohmann::json j;
    j["meta"] = {{"algorithm", report.algorithm}, {"lambda", report.lambda},
                 {"m", report.memory},            {"eta", report.eta},
                 {"T", report.horizon},           {"n", report.n_assets},
                 {"seed", report.seed},           {"G", report.grad_bound},
                 {"D", report.diameter}};
    j["weights"] = report.weights;
    j["losses"] = report.losses;
    j["values"] = report.values;
    if (report.regret)
        j["regret"] = {{"trace", report.regret->trace},
                       {"comparator_objective", report.regret->comparator_objective},
                       {"loss_spectrum", report.regret->loss_spectrum}};
    if (report.portmanteau) j["portmanteau"] = to_json(*report.portmanteau);
    if (report.backtest) j["backtest"] = to_json(*report.backtest);
    if (report.aggregate) j["aggregate"] = to_json(*report.aggregate);
    return j;
}

inline std::string report_to_json_string(const RunReport& report) {
    return to_json(report).dump(2) + "\n";
}

// Plot-ready per-round table: round, portfolio value, loss, weights. All
// numbers at 17 significant digits so a re-parse reproduces them exactly.
inline std::string report_to_csv_string(const RunReport& report) {
    std::ostringstream out;
    const int n = report.n_assets;
    out << "round,value,loss";
    for (int i = 0; i < n; ++i) out << ",weight_" << (i + 1);
    out << '\n';
    for (std::size_t t = 0; t < report.values.size(); ++t) {
        out << t << ',' << format_full(report.values[t]) << ','
            << (t < report.losses.size() ? format_full(report.losses[t]) : "");
        for (int i = 0; i < n; ++i)
            out << ',' << (t < report.weights.size() ? format_full(report.weights[t][i]) : "");
        out << '\n';
    }
    return out.str();
}

inline std::string report_to_string(const RunReport& report, const std::string& format) {
    if (format == "json") return report_to_json_string(report);
    if (format == "csv") return report_to_csv_string(report);
    throw ParameterError("unknown report format: " + format);
}

inline void write_report(const RunReport& report, const std::string& path, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report: " + path);
    out << report_to_string(report, format);
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace osa
