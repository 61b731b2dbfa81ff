// Command-line frontend: synthetic data generation, the online statistical
// arbitrage run, regret experiments, mean-reversion statistics, threshold
// backtesting and strategy comparison. Every subcommand is deterministic
// given --seed; warnings go to stderr and never change the exit status.
//
// Exit codes: 0 ok, 1 usage, 2 data, 3 numerical fault.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "osa/adversary.hpp"
#include "osa/backtest.hpp"
#include "osa/csv.hpp"
#include "osa/decision_set.hpp"
#include "osa/errors.hpp"
#include "osa/monte_carlo.hpp"
#include "osa/ogd_memory.hpp"
#include "osa/portfolio.hpp"
#include "osa/regret.hpp"
#include "osa/report.hpp"
#include "osa/statarb.hpp"
#include "osa/stats.hpp"
#include "osa/synthetic.hpp"

namespace {

using nlohmann::json;

// Stream tag for deriving the synthetic-data seed from the master seed;
// Monte Carlo run i uses stream i, so tags must stay above any run count.
constexpr std::uint64_t kDataStream = 1ULL << 40;

struct InputOptions {
    std::string input_path;
    std::string synth_kind;
    std::string values_path;   // per-round value series, backtest/portmanteau only
    osa::SyntheticSpec synth;
    bool rescale = false;
};

void add_synth_params(CLI::App* cmd, osa::SyntheticSpec& spec) {
    cmd->add_option("--T", spec.horizon, "synthetic horizon (rows)");
    cmd->add_option("--n-assets", spec.n_assets, "assets for white-noise/ar1 kinds");
    cmd->add_option("--level", spec.level, "base price level");
    cmd->add_option("--vol", spec.volatility, "per-step log volatility");
    cmd->add_option("--kappa", spec.reversion_speed, "OU mean-reversion speed");
    cmd->add_option("--spread-vol", spec.spread_vol, "OU stationary std of the (log) spread");
    cmd->add_option("--corr", spec.correlation, "ou-pair leg correlation");
    cmd->add_option("--phi", spec.ar_coeff, "AR(1) coefficient");
    cmd->add_option("--beta", spec.beta, "cointegration scale of leg B");
}

void add_input_options(CLI::App* cmd, InputOptions& in, bool with_values = false) {
    cmd->add_option("--input", in.input_path, "price CSV (long `date,ticker,close` or wide)");
    cmd->add_option("--synth", in.synth_kind,
                    "synthetic kind: white-noise | ar1 | ou-pair | cointegrated-pair");
    if (with_values)
        cmd->add_option("--values", in.values_path, "per-round value CSV (round,value,...)");
    cmd->add_flag("--rescale", in.rescale, "divide each asset by its sample mean");
    add_synth_params(cmd, in.synth);
}

osa::PriceSeries get_prices(const InputOptions& in, std::uint64_t master_seed) {
    const int sources = (!in.input_path.empty()) + (!in.synth_kind.empty());
    if (sources != 1) throw osa::ParameterError("need exactly one input source (--input or --synth)");
    osa::PriceSeries series;
    if (!in.input_path.empty()) {
        series = osa::load_prices_csv(in.input_path);
    } else {
        osa::SyntheticSpec spec = in.synth;
        spec.kind = osa::synthetic_kind_from_string(in.synth_kind);
        spec.seed = osa::Rng::derive_seed(master_seed, kDataStream);
        series = osa::generate_synthetic(spec);
    }
    if (in.rescale) series = osa::rescale_per_asset(series);
    return series;
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw osa::DataError("cannot write output: " + path);
    out << content;
    if (!out) throw osa::DataError("write failed: " + path);
}

std::string format_pvalue(double p) {
    if (p < 1e-15) return "<1e-15";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", p);
    return buf;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

// ---------------------------------------------------------------------------
// osa: run the online algorithm, evaluate reversion and trading revenue
// ---------------------------------------------------------------------------

struct OsaCommand {
    InputOptions in;
    double lambda = 2.0;
    int memory = 5;
    int lags = 20;
    double lower = -1.0, upper = 1.0;
    int runs = 50;
    std::uint64_t seed = 0;
    double eta = 0.0, gbound = 0.0;   // 0 = use defaults
    std::string out, format = "json";
};

osa::OsaParams make_params(const OsaCommand& cmd, std::uint64_t run_seed) {
    osa::OsaParams params;
    params.lambda = cmd.lambda;
    params.memory = cmd.memory;
    if (cmd.eta > 0.0) params.eta = cmd.eta;
    if (cmd.gbound > 0.0) params.grad_bound = cmd.gbound;
    params.seed = run_seed;
    return params;
}

osa::RunStats evaluate_run(const osa::Vec& values, int lags, double lower, double upper,
                           const std::string& label) {
    osa::RunStats stats;
    stats.revenue = osa::threshold_backtest(values, lower, upper).revenue;
    try {
        stats.p_value = osa::portmanteau(osa::daily_changes(values), lags).p_value;
    } catch (const osa::DegenerateSeries&) {
        warn(label + ": degenerate value series, reporting p-value 1");
        stats.p_value = 1.0;
    }
    return stats;
}

void run_osa_command(const OsaCommand& cmd) {
    const osa::PriceSeries prices = get_prices(cmd.in, cmd.seed);
    const osa::OsaResult run = osa::osa_run(prices.rows, make_params(cmd, osa::Rng::derive_seed(cmd.seed, 0)));
    const osa::Vec values = osa::portfolio_values(run.weights, prices.rows);

    osa::RunReport report;
    report.algorithm = "osa";
    report.lambda = run.lambda;
    report.memory = run.memory;
    report.eta = run.eta;
    report.horizon = prices.n_rows();
    report.n_assets = prices.n_assets();
    report.seed = cmd.seed;
    report.grad_bound = run.grad_bound;
    report.diameter = std::sqrt(2.0);
    report.weights = run.weights;
    report.losses = run.losses;
    report.values = values;

    const osa::HindsightWeights hindsight =
        osa::offline_optimal_weights(prices.rows, cmd.lambda, cmd.memory);
    osa::RegretSection regret;
    regret.comparator_objective = hindsight.objective;
    regret.loss_spectrum = hindsight.spectrum;
    double cumulative = 0.0;
    std::vector<osa::Vec> fixed_window(static_cast<std::size_t>(cmd.memory), hindsight.x);
    for (int t = cmd.memory - 1; t < prices.n_rows(); ++t) {
        const auto price_window =
            std::span<const osa::Vec>(prices.rows).subspan(t - cmd.memory + 1, cmd.memory);
        cumulative += run.losses[t] - osa::eval_f(fixed_window, price_window, cmd.lambda);
        regret.trace.push_back(cumulative);
    }
    report.regret = std::move(regret);

    try {
        report.portmanteau = osa::portmanteau(osa::daily_changes(values), cmd.lags);
    } catch (const osa::DegenerateSeries&) {
        warn("portmanteau skipped: degenerate value series");
    }
    report.backtest = osa::threshold_backtest(values, cmd.lower, cmd.upper);

    report.aggregate = osa::monte_carlo_report(
        [&](std::uint64_t run_seed) {
            const osa::OsaResult r = osa::osa_run(prices.rows, make_params(cmd, run_seed));
            return evaluate_run(osa::portfolio_values(r.weights, prices.rows), cmd.lags, cmd.lower,
                                cmd.upper, "osa run");
        },
        cmd.runs, cmd.seed);

    write_output(osa::report_to_string(report, cmd.format), cmd.out);
}

// ---------------------------------------------------------------------------
// portmanteau / backtest on a stored or synthetic value series
// ---------------------------------------------------------------------------

osa::Vec get_values(const InputOptions& in, std::uint64_t seed) {
    const int sources =
        (!in.input_path.empty()) + (!in.synth_kind.empty()) + (!in.values_path.empty());
    if (sources != 1)
        throw osa::ParameterError("need exactly one input source (--values, --input or --synth)");
    if (!in.values_path.empty()) return osa::load_value_series_csv(in.values_path);
    const osa::PriceSeries prices = get_prices(in, seed);
    if (prices.n_assets() != 1)
        throw osa::ParameterError("this command takes a single series; got " +
                                  std::to_string(prices.n_assets()) +
                                  " assets (use `osa` or `compare-pairs`)");
    osa::Vec values(prices.n_rows());
    for (int t = 0; t < prices.n_rows(); ++t) values[t] = prices.rows[t][0];
    return values;
}

struct SeriesCommand {
    InputOptions in;
    int lags = 20;
    double lower = -1.0, upper = 1.0;
    std::uint64_t seed = 0;
    std::string out, format = "json";
};

void run_portmanteau_command(const SeriesCommand& cmd) {
    const osa::Vec values = get_values(cmd.in, cmd.seed);
    osa::RunReport report;
    report.algorithm = "portmanteau";
    report.horizon = static_cast<int>(values.size());
    report.n_assets = 1;
    report.seed = cmd.seed;
    report.values = values;
    report.portmanteau = osa::portmanteau(osa::daily_changes(values), cmd.lags);
    write_output(osa::report_to_string(report, cmd.format), cmd.out);
    if (!cmd.out.empty())
        std::cout << "Q = " << report.portmanteau->q
                  << "  p = " << format_pvalue(report.portmanteau->p_value) << "\n";
}

void run_backtest_command(const SeriesCommand& cmd) {
    const osa::Vec values = get_values(cmd.in, cmd.seed);
    osa::RunReport report;
    report.algorithm = "backtest";
    report.horizon = static_cast<int>(values.size());
    report.n_assets = 1;
    report.seed = cmd.seed;
    report.values = values;
    report.backtest = osa::threshold_backtest(values, cmd.lower, cmd.upper);
    write_output(osa::report_to_string(report, cmd.format), cmd.out);
    if (!cmd.out.empty())
        std::cout << "trades = " << report.backtest->events.size()
                  << "  revenue = " << report.backtest->revenue << "\n";
}

// ---------------------------------------------------------------------------
// compare-pairs: Benchmark vs Off-opt vs OSA on the same pair
// ---------------------------------------------------------------------------

struct CompareCommand {
    InputOptions in;
    double lambda = 2.0;
    int memory = 5;
    int lags = 20;
    double lower = -1.0, upper = 1.0;
    int runs = 50;
    std::uint64_t seed = 0;
    int calib_begin = -1, calib_end = -1;
    std::string out, format = "json";
};

void run_compare_command(const CompareCommand& cmd) {
    const osa::PriceSeries prices = get_prices(cmd.in, cmd.seed);
    if (prices.n_assets() != 2)
        throw osa::ParameterError("compare-pairs requires exactly 2 assets, got " +
                                  std::to_string(prices.n_assets()));

    std::optional<std::pair<int, int>> calibration;
    if (cmd.calib_begin >= 0 || cmd.calib_end >= 0)
        calibration = std::make_pair(cmd.calib_begin < 0 ? 0 : cmd.calib_begin,
                                     cmd.calib_end < 0 ? prices.n_rows() : cmd.calib_end);

    json rows = json::array();

    const osa::Vec bench = osa::benchmark_weights(prices.rows, calibration);
    const osa::RunStats bench_stats = evaluate_run(osa::portfolio_values(bench, prices.rows),
                                                   cmd.lags, cmd.lower, cmd.upper, "benchmark");
    rows.push_back({{"strategy", "benchmark"},
                    {"p_value", bench_stats.p_value},
                    {"revenue", bench_stats.revenue},
                    {"weights", bench}});

    const osa::HindsightWeights offopt =
        osa::offline_optimal_weights(prices.rows, cmd.lambda, cmd.memory);
    const osa::RunStats offopt_stats = evaluate_run(osa::portfolio_values(offopt.x, prices.rows),
                                                    cmd.lags, cmd.lower, cmd.upper, "off-opt");
    rows.push_back({{"strategy", "off-opt"},
                    {"p_value", offopt_stats.p_value},
                    {"revenue", offopt_stats.revenue},
                    {"weights", offopt.x},
                    {"objective", offopt.objective},
                    {"loss_spectrum", offopt.spectrum}});

    osa::OsaParams params;
    params.lambda = cmd.lambda;
    params.memory = cmd.memory;
    const osa::Aggregate agg = osa::monte_carlo_report(
        [&](std::uint64_t run_seed) {
            params.seed = run_seed;
            const osa::OsaResult r = osa::osa_run(prices.rows, params);
            return evaluate_run(osa::portfolio_values(r.weights, prices.rows), cmd.lags, cmd.lower,
                                cmd.upper, "osa run");
        },
        cmd.runs, cmd.seed);
    rows.push_back({{"strategy", "osa"},
                    {"p_value", agg.mean_p},
                    {"revenue", agg.mean_revenue},
                    {"std_p", agg.std_p},
                    {"std_revenue", agg.std_revenue},
                    {"n_runs", agg.n_runs}});

    json doc = {{"meta",
                 {{"algorithm", "compare-pairs"},
                  {"lambda", cmd.lambda},
                  {"m", cmd.memory},
                  {"L", cmd.lags},
                  {"T", prices.n_rows()},
                  {"n", prices.n_assets()},
                  {"seed", cmd.seed},
                  {"runs", cmd.runs},
                  {"assets", prices.assets}}},
                {"strategies", rows}};

    std::string content;
    if (cmd.format == "json") {
        content = doc.dump(2) + "\n";
    } else if (cmd.format == "csv") {
        std::string csv = "strategy,p_value,revenue\n";
        for (const auto& row : rows)
            csv += row["strategy"].get<std::string>() + "," +
                   osa::format_full(row["p_value"].get<double>()) + "," +
                   osa::format_full(row["revenue"].get<double>()) + "\n";
        content = csv;
    } else {
        throw osa::ParameterError("unknown format: " + cmd.format);
    }
    write_output(content, cmd.out);

    if (!cmd.out.empty()) {
        std::printf("%-10s %12s %12s\n", "strategy", "p-value", "revenue");
        for (const auto& row : rows)
            std::printf("%-10s %12s %12.4f\n", row["strategy"].get<std::string>().c_str(),
                        format_pvalue(row["p_value"].get<double>()).c_str(),
                        row["revenue"].get<double>());
    }
}

// ---------------------------------------------------------------------------
// regret-experiment: measured regret against the theoretical bound
// ---------------------------------------------------------------------------

struct RegretCommand {
    std::vector<int> horizons{100, 316, 1000, 3162, 10000};
    std::string adversary = "quadratic";   // quadratic | statarb
    int dim = 5;
    int memory = 3;
    int runs = 20;
    double lambda = 2.0;
    std::uint64_t seed = 0;
    std::string out, format = "json";
};

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void run_regret_command(const RegretCommand& cmd) {
    if (cmd.horizons.empty()) throw osa::ParameterError("need at least one horizon");
    if (cmd.adversary != "quadratic" && cmd.adversary != "statarb")
        throw osa::ParameterError("unknown adversary: " + cmd.adversary);

    json rows = json::array();
    std::vector<double> log_t, log_r;

    for (const int horizon : cmd.horizons) {
        if (horizon < cmd.memory) throw osa::ParameterError("horizon below memory length");
        const std::uint64_t horizon_seed =
            osa::Rng::derive_seed(cmd.seed, static_cast<std::uint64_t>(horizon));
        std::vector<double> regrets;
        double bound = 0.0;

        if (cmd.adversary == "quadratic") {
            const osa::DecisionSet ball = osa::DecisionSet::ball(cmd.dim, 1.0);
            for (int i = 0; i < cmd.runs; ++i) {
                const osa::AdversarySuite suite = osa::make_quadratic_adversary(
                    cmd.dim, cmd.memory, horizon,
                    osa::Rng::derive_seed(horizon_seed, static_cast<std::uint64_t>(i)));
                const double eta =
                    osa::ogd_eta(ball.diameter(), suite.grad_bound, cmd.memory, horizon);
                const osa::OgdRun run = osa::run_ogd_memory(suite.losses, ball, eta);
                const osa::ComparatorResult comp = osa::offline_comparator(suite.losses, ball);
                if (!comp.converged) warn("offline comparator hit its iteration cap");
                regrets.push_back(
                    osa::empirical_regret(run.decisions, comp.x, suite.losses).total());
                bound = 2.0 * suite.grad_bound * ball.diameter() *
                        std::sqrt(static_cast<double>(cmd.memory) * horizon);
            }
        } else {
            osa::SyntheticSpec spec;
            spec.kind = osa::SyntheticKind::CointegratedPair;
            spec.horizon = horizon;
            spec.seed = osa::Rng::derive_seed(horizon_seed, kDataStream);
            const osa::PriceSeries prices = osa::generate_synthetic(spec);
            const osa::HindsightWeights hindsight =
                osa::offline_optimal_weights(prices.rows, cmd.lambda, cmd.memory);
            for (int i = 0; i < cmd.runs; ++i) {
                osa::OsaParams params;
                params.lambda = cmd.lambda;
                params.memory = cmd.memory;
                params.seed = osa::Rng::derive_seed(horizon_seed, static_cast<std::uint64_t>(i));
                const osa::OsaResult run = osa::osa_run(prices.rows, params);
                double alg = 0.0;
                for (int t = cmd.memory - 1; t < horizon; ++t) alg += run.losses[t];
                regrets.push_back(alg - hindsight.objective);
                bound = 3.0 * std::sqrt(static_cast<double>(cmd.memory)) * run.grad_bound *
                        std::sqrt(2.0) * std::pow(static_cast<double>(horizon), 0.75);
            }
        }

        double mean = 0.0, worst = regrets.front();
        for (double r : regrets) {
            mean += r;
            worst = std::max(worst, r);
        }
        mean /= static_cast<double>(regrets.size());
        rows.push_back({{"T", horizon},
                        {"mean_regret", mean},
                        {"max_regret", worst},
                        {"bound", bound},
                        {"within_bound", worst <= bound}});
        log_t.push_back(std::log10(static_cast<double>(horizon)));
        log_r.push_back(std::log10(std::max(mean, 1.0)));
    }

    const double slope = log_t.size() >= 2 ? fit_slope(log_t, log_r) : 0.0;
    json doc = {{"meta",
                 {{"algorithm", "regret-experiment"},
                  {"adversary", cmd.adversary},
                  {"dim", cmd.dim},
                  {"m", cmd.memory},
                  {"runs", cmd.runs},
                  {"seed", cmd.seed},
                  {"slope", slope}}},
                {"rows", rows}};

    std::string content;
    if (cmd.format == "json") {
        content = doc.dump(2) + "\n";
    } else if (cmd.format == "csv") {
        std::string csv = "T,mean_regret,max_regret,bound\n";
        for (const auto& row : rows)
            csv += std::to_string(row["T"].get<int>()) + "," +
                   osa::format_full(row["mean_regret"].get<double>()) + "," +
                   osa::format_full(row["max_regret"].get<double>()) + "," +
                   osa::format_full(row["bound"].get<double>()) + "\n";
        content = csv;
    } else {
        throw osa::ParameterError("unknown format: " + cmd.format);
    }
    write_output(content, cmd.out);
}

// ---------------------------------------------------------------------------

struct SynthCommand {
    osa::SyntheticSpec spec;
    std::string kind = "cointegrated-pair";
    std::string out;
};

void run_synth_command(SynthCommand& cmd) {
    cmd.spec.kind = osa::synthetic_kind_from_string(cmd.kind);
    const osa::PriceSeries series = osa::generate_synthetic(cmd.spec);
    if (cmd.out.empty()) {
        osa::write_prices_csv(series, std::cout);
    } else {
        osa::write_prices_csv(series, cmd.out);
    }
}

void add_eval_flags(CLI::App* sub, int* lags, double* lower, double* upper) {
    if (lags) sub->add_option("--lags", *lags, "Portmanteau lag count L");
    if (lower) sub->add_option("--lower", *lower, "buy threshold");
    if (upper) sub->add_option("--upper", *upper, "sell threshold");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online mean-reverting portfolio construction and evaluation"};
    app.require_subcommand(1);

    OsaCommand osa_cmd;
    CLI::App* osa_sub = app.add_subcommand("osa", "run the online statistical arbitrage algorithm");
    add_input_options(osa_sub, osa_cmd.in);
    osa_sub->add_option("--lambda", osa_cmd.lambda, "variance weight in the loss");
    osa_sub->add_option("--memory", osa_cmd.memory, "window length m");
    add_eval_flags(osa_sub, &osa_cmd.lags, &osa_cmd.lower, &osa_cmd.upper);
    osa_sub->add_option("--runs", osa_cmd.runs, "Monte Carlo runs for the aggregate section");
    osa_sub->add_option("--seed", osa_cmd.seed, "master seed");
    osa_sub->add_option("--eta", osa_cmd.eta, "override the learning rate");
    osa_sub->add_option("--gbound", osa_cmd.gbound, "override the gradient bound G");
    osa_sub->add_option("--out", osa_cmd.out, "output path (default stdout)");
    osa_sub->add_option("--format", osa_cmd.format, "json | csv");

    SeriesCommand pm_cmd;
    CLI::App* pm_sub = app.add_subcommand("portmanteau", "Portmanteau mean-reversion test");
    add_input_options(pm_sub, pm_cmd.in, true);
    add_eval_flags(pm_sub, &pm_cmd.lags, nullptr, nullptr);
    pm_sub->add_option("--seed", pm_cmd.seed, "master seed");
    pm_sub->add_option("--out", pm_cmd.out, "output path (default stdout)");
    pm_sub->add_option("--format", pm_cmd.format, "json | csv");

    SeriesCommand bt_cmd;
    CLI::App* bt_sub = app.add_subcommand("backtest", "threshold trading backtest");
    add_input_options(bt_sub, bt_cmd.in, true);
    add_eval_flags(bt_sub, nullptr, &bt_cmd.lower, &bt_cmd.upper);
    bt_sub->add_option("--seed", bt_cmd.seed, "master seed");
    bt_sub->add_option("--out", bt_cmd.out, "output path (default stdout)");
    bt_sub->add_option("--format", bt_cmd.format, "json | csv");

    CompareCommand cp_cmd;
    CLI::App* cp_sub = app.add_subcommand("compare-pairs", "Benchmark vs Off-opt vs OSA on a pair");
    add_input_options(cp_sub, cp_cmd.in);
    cp_sub->add_option("--lambda", cp_cmd.lambda, "variance weight in the loss");
    cp_sub->add_option("--memory", cp_cmd.memory, "window length m");
    add_eval_flags(cp_sub, &cp_cmd.lags, &cp_cmd.lower, &cp_cmd.upper);
    cp_sub->add_option("--runs", cp_cmd.runs, "OSA Monte Carlo runs");
    cp_sub->add_option("--seed", cp_cmd.seed, "master seed");
    cp_sub->add_option("--calib-begin", cp_cmd.calib_begin, "benchmark calibration window start row");
    cp_sub->add_option("--calib-end", cp_cmd.calib_end, "benchmark calibration window end row");
    cp_sub->add_option("--out", cp_cmd.out, "output path (default stdout)");
    cp_sub->add_option("--format", cp_cmd.format, "json | csv");

    RegretCommand rg_cmd;
    CLI::App* rg_sub = app.add_subcommand("regret-experiment", "measured regret vs the bound");
    rg_sub->add_option("--horizons", rg_cmd.horizons, "horizons T to test");
    rg_sub->add_option("--adversary", rg_cmd.adversary, "quadratic | statarb");
    rg_sub->add_option("--dim", rg_cmd.dim, "decision dimension (quadratic)");
    rg_sub->add_option("--memory", rg_cmd.memory, "window length m");
    rg_sub->add_option("--runs", rg_cmd.runs, "seeds per horizon");
    rg_sub->add_option("--lambda", rg_cmd.lambda, "variance weight (statarb)");
    rg_sub->add_option("--seed", rg_cmd.seed, "master seed");
    rg_sub->add_option("--out", rg_cmd.out, "output path (default stdout)");
    rg_sub->add_option("--format", rg_cmd.format, "json | csv");

    SynthCommand sy_cmd;
    CLI::App* sy_sub = app.add_subcommand("synth", "generate a synthetic price CSV");
    sy_sub->add_option("--kind", sy_cmd.kind,
                       "white-noise | ar1 | ou-pair | cointegrated-pair");
    add_synth_params(sy_sub, sy_cmd.spec);
    sy_sub->add_option("--seed", sy_cmd.spec.seed, "generator seed");
    sy_sub->add_option("--out", sy_cmd.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (*osa_sub) run_osa_command(osa_cmd);
        if (*pm_sub) run_portmanteau_command(pm_cmd);
        if (*bt_sub) run_backtest_command(bt_cmd);
        if (*cp_sub) run_compare_command(cp_cmd);
        if (*rg_sub) run_regret_command(rg_cmd);
        if (*sy_sub) run_synth_command(sy_cmd);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const osa::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const osa::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const osa::NumericalFault& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
