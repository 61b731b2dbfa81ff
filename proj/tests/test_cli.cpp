#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "osa/csv.hpp"
#include "osa/portfolio.hpp"
#include "osa/statarb.hpp"
#include "osa/stats.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string out_path = (dir / "osa_cli_stdout.txt").string();
    const std::string err_path = (dir / "osa_cli_stderr.txt").string();
    const std::string cmd =
        std::string(OSA_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("cli synth is deterministic and loadable") {
    const CliResult a = run_cli("synth --kind cointegrated-pair --T 100 --seed 5");
    const CliResult b = run_cli("synth --kind cointegrated-pair --T 100 --seed 5");
    const CliResult c = run_cli("synth --kind cointegrated-pair --T 100 --seed 6");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out != c.out);

    const std::string path = temp_path("osa_cli_synth.csv");
    REQUIRE(run_cli("synth --kind ar1 --T 50 --seed 1 --out " + path).exit_code == 0);
    const osa::PriceSeries s = osa::load_prices_csv(path);
    REQUIRE(s.n_rows() == 50);
    std::remove(path.c_str());
}

TEST_CASE("cli osa produces a full report") {
    const CliResult r =
        run_cli("osa --synth cointegrated-pair --T 300 --runs 5 --seed 7 --memory 4");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["meta"]["algorithm"] == "osa");
    REQUIRE(j["meta"]["m"] == 4);
    REQUIRE(j["meta"]["T"] == 300);
    REQUIRE(j["weights"].size() == 300);
    REQUIRE(j["losses"].size() == 300);
    REQUIRE(j["values"].size() == 300);
    REQUIRE(j.contains("regret"));
    REQUIRE(j.contains("portmanteau"));
    REQUIRE(j.contains("backtest"));
    REQUIRE(j["aggregate"]["n_runs"] == 5);

    const CliResult again =
        run_cli("osa --synth cointegrated-pair --T 300 --runs 5 --seed 7 --memory 4");
    REQUIRE(again.out == r.out);
}

TEST_CASE("cli osa csv format feeds portmanteau and backtest") {
    const std::string values_path = temp_path("osa_cli_values.csv");
    const CliResult r = run_cli("osa --synth cointegrated-pair --T 200 --runs 2 --seed 3 "
                                "--format csv --out " +
                                values_path);
    REQUIRE(r.exit_code == 0);

    const CliResult pm = run_cli("portmanteau --values " + values_path + " --lags 10");
    REQUIRE(pm.exit_code == 0);
    const json jpm = json::parse(pm.out);
    REQUIRE(jpm["portmanteau"]["L"] == 10);
    REQUIRE(jpm["portmanteau"]["rho"].size() == 10);

    const CliResult bt = run_cli("backtest --values " + values_path + " --lower -0.5 --upper 0.5");
    REQUIRE(bt.exit_code == 0);
    const json jbt = json::parse(bt.out);
    REQUIRE(jbt["backtest"].contains("revenue"));
    REQUIRE(jbt["backtest"].contains("trades"));
    std::remove(values_path.c_str());
}

TEST_CASE("cli compare-pairs matches library recomputation") {
    const std::string csv_path = temp_path("osa_cli_pair.csv");
    REQUIRE(run_cli("synth --kind cointegrated-pair --T 400 --seed 11 --out " + csv_path)
                .exit_code == 0);

    const CliResult r =
        run_cli("compare-pairs --input " + csv_path + " --runs 3 --seed 2 --lambda 2 --memory 5");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["strategies"].size() == 3);
    REQUIRE(j["strategies"][0]["strategy"] == "benchmark");
    REQUIRE(j["strategies"][1]["strategy"] == "off-opt");
    REQUIRE(j["strategies"][2]["strategy"] == "osa");

    // off-opt column equals the library's hindsight weights on the same file
    const osa::PriceSeries prices = osa::load_prices_csv(csv_path);
    const osa::HindsightWeights h = osa::offline_optimal_weights(prices.rows, 2.0, 5);
    REQUIRE(j["strategies"][1]["weights"][0].get<double>() == Catch::Approx(h.x[0]).margin(1e-12));
    REQUIRE(j["strategies"][1]["weights"][1].get<double>() == Catch::Approx(h.x[1]).margin(1e-12));
    REQUIRE(j["strategies"][1]["objective"].get<double>() ==
            Catch::Approx(h.objective).margin(1e-9));

    // benchmark column equals the fixed-leg construction
    const osa::Vec bench = osa::benchmark_weights(prices.rows);
    REQUIRE(j["strategies"][0]["weights"][0].get<double>() == Catch::Approx(bench[0]).margin(1e-12));

    std::remove(csv_path.c_str());
}

TEST_CASE("cli compare-pairs warns but succeeds on a degenerate constant pair") {
    const std::string csv_path = temp_path("osa_cli_flat.csv");
    REQUIRE(run_cli("synth --kind cointegrated-pair --T 60 --vol 0 --spread-vol 0 --seed 1 --out " +
                    csv_path)
                .exit_code == 0);
    const CliResult r = run_cli("compare-pairs --input " + csv_path + " --runs 2 --seed 1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.err.find("warning") != std::string::npos);
    const json j = json::parse(r.out);
    REQUIRE(j["strategies"].size() == 3);
    std::remove(csv_path.c_str());
}

TEST_CASE("cli osa report recomputes from raw weights and prices") {
    const std::string csv_path = temp_path("osa_cli_recompute.csv");
    REQUIRE(run_cli("synth --kind cointegrated-pair --T 250 --seed 17 --out " + csv_path)
                .exit_code == 0);
    const CliResult r = run_cli("osa --input " + csv_path + " --runs 2 --seed 8 --lags 10");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);

    const osa::PriceSeries prices = osa::load_prices_csv(csv_path);
    std::vector<osa::Vec> weights;
    for (const auto& w : j["weights"]) weights.push_back(w.get<osa::Vec>());
    const osa::Vec values = osa::portfolio_values(weights, prices.rows);
    for (std::size_t t = 0; t < values.size(); ++t)
        REQUIRE(j["values"][t].get<double>() == Catch::Approx(values[t]).margin(1e-12));

    // the reported statistic is the one of the recomputed daily changes
    const auto pm = osa::portmanteau(osa::daily_changes(values), 10);
    REQUIRE(j["portmanteau"]["Q"].get<double>() == Catch::Approx(pm.q).margin(1e-9));
    REQUIRE(j["regret"]["loss_spectrum"].size() == 2);
    std::remove(csv_path.c_str());
}

TEST_CASE("cli regret-experiment emits rows and the bound column") {
    const CliResult r = run_cli(
        "regret-experiment --horizons 100 --horizons 316 --runs 3 --dim 3 --memory 2 --seed 9");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 2);
    for (const auto& row : j["rows"]) {
        REQUIRE(row["max_regret"].get<double>() <= row["bound"].get<double>());
        REQUIRE(row["within_bound"] == true);
    }

    SECTION("single horizon gives a single row") {
        const CliResult one =
            run_cli("regret-experiment --horizons 100 --runs 2 --dim 2 --memory 2 --seed 1");
        REQUIRE(json::parse(one.out)["rows"].size() == 1);
    }

    SECTION("full suite slope is sublinear") {
        const CliResult full = run_cli("regret-experiment --runs 5 --seed 3");
        REQUIRE(full.exit_code == 0);
        const json jf = json::parse(full.out);
        REQUIRE(jf["rows"].size() == 5);
        REQUIRE(jf["meta"]["slope"].get<double>() <= 0.6);
        for (const auto& row : jf["rows"]) REQUIRE(row["within_bound"] == true);
    }

    SECTION("statarb adversary compares against the T^(3/4) bound") {
        const CliResult sa = run_cli(
            "regret-experiment --adversary statarb --horizons 256 --runs 2 --memory 5 --seed 4");
        REQUIRE(sa.exit_code == 0);
        const json js = json::parse(sa.out);
        REQUIRE(js["rows"].size() == 1);
        REQUIRE(js["rows"][0]["max_regret"].get<double>() <= js["rows"][0]["bound"].get<double>());
    }
}

TEST_CASE("cli exit codes") {
    SECTION("usage errors exit 1") {
        REQUIRE(run_cli("frobnicate").exit_code == 1);
        REQUIRE(run_cli("osa --T 50").exit_code == 1);                    // no input source
        REQUIRE(run_cli("osa --synth bogus-kind --T 50").exit_code == 1);
        REQUIRE(run_cli("compare-pairs --synth white-noise --n-assets 3 --T 50 --runs 1")
                    .exit_code == 1);                                     // n != 2
        REQUIRE(run_cli("backtest --synth white-noise --T 50 --lower 2 --upper -2").exit_code == 1);
    }

    SECTION("data errors exit 2") {
        REQUIRE(run_cli("osa --input /nonexistent/prices.csv").exit_code == 2);
        const std::string bad_path = temp_path("osa_cli_bad.csv");
        std::ofstream(bad_path) << "date,ticker,close\n2020-01-01,A,not-a-number\n";
        REQUIRE(run_cli("portmanteau --input " + bad_path).exit_code == 2);
        std::remove(bad_path.c_str());
    }

    SECTION("help exits 0") {
        REQUIRE(run_cli("--help").exit_code == 0);
        REQUIRE(run_cli("osa --help").exit_code == 0);
    }
}
