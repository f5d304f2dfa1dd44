#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "relutil/bounds.hpp"
#include "relutil/market_sim.hpp"
#include "relutil/result_io.hpp"
#include "relutil/solvers.hpp"

namespace relutil {

// Raised when a dataset-backed experiment cannot find its input files;
// callers report this as "skipped", distinct from failure.
struct DatasetMissing : std::runtime_error {
    explicit DatasetMissing(const std::string& path)
        : std::runtime_error("dataset absent: " + path), missing_path(path) {}
    std::string missing_path;
};

struct ExperimentOutput {
    ResultTable table;
    std::vector<nlohmann::json> records;
    nlohmann::json summary;
};

// Fixed per-experiment stream ids; a master seed expands to
// (master, experiment id) and then to per-realization substreams.
RngSeed experiment_seed(std::uint64_t master, std::uint64_t experiment_id);

// Average optimal risky-asset weight of the two-asset market under both
// objectives, per alpha, over seeded market realizations.
struct Table1Params {
    std::vector<double> alphas = {0.001, 0.01, 0.1, 0.2, 0.3, 0.5, 0.75, 0.9};
    std::size_t realizations = 100;
    std::size_t n = 252000;
    double tol = 1e-10;
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_table1(const Table1Params& p);

// Per-sample optimal weights and their true-utility shortfall against the
// all-cash portfolio for several sample sizes, plus a high-precision
// reference optimum. True-utility differences use common random numbers
// with antithetic pairing, which the +-0.05-scale reference check needs at
// desk-scale N.
struct Fig1Params {
    std::vector<std::size_t> n_list = {2520, 25200, 252000};
    std::size_t realizations = 200;
    double alpha = 0.2;
    std::size_t n_true = 10000000;
    double tol = 1e-10;
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_fig1(const Fig1Params& p);

// Log-utility GDSEG stability runs on a daily-returns dataset: per-stock
// [min, max] of pruned weights over the runs, wealth statistics of the
// best run.
struct NyseLogParams {
    std::string data_path = "data/nyse2.txt";
    std::string tickers_path = "data/nyse2.tickers";
    std::size_t runs = 30;
    GdsegConfig gdseg;
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_nyse_log(const NyseLogParams& p);

// Power-utility best-of-k GDSEG portfolios per alpha and objective, with
// wealth, annual return, and annual volatility.
struct Table4Params {
    std::string data_path = "data/nyse2.txt";
    std::string tickers_path = "data/nyse2.tickers";
    std::vector<double> alphas = {0.01, 0.1, 0.2, 0.3, 0.5, 0.75};
    std::size_t k = 10;
    GdsegConfig gdseg;
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_table4(const Table4Params& p);

// Annual-wealth statistics (mean, median, std, 5th/95th percentile) of
// reference portfolios under the multivariate lognormal model fitted to a
// dataset. The built-in portfolio set holds the uniform portfolio plus the
// reference optimal portfolios of the dataset experiments.
struct Table5Params {
    std::string data_path = "data/nyse2.txt";
    std::string tickers_path = "data/nyse2.tickers";
    std::optional<std::string> moments_file; // multivariate model JSON with labels
    std::size_t paths = 1000000;
    bool core_portfolios_only = false; // uniform + log-optimal rows only
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_table5(const Table5Params& p);

// Average per-stock weight of empirically optimal portfolios over
// realizations of the fitted multivariate model, plus evaluated true
// utilities (raw, and linearly transformed against the uniform portfolio).
struct Fig2Params {
    std::string data_path = "data/nyse2.txt";
    std::string tickers_path = "data/nyse2.tickers";
    std::optional<std::string> moments_file;
    std::size_t realizations = 200;
    double alpha = 0.2;
    std::size_t n = 11178;
    std::size_t k = 10;
    std::size_t n_true = 10000000;
    GdsegConfig gdseg;
    std::uint64_t master_seed = 1;
};
ExperimentOutput run_fig2(const Fig2Params& p);

// Bound calculus printout for one parameter point.
struct BoundReportParams {
    std::size_t n = 2520;
    std::size_t d = 2;
    double alpha = 1.0;
    double delta = 0.05;
    std::optional<double> L_n;
    std::optional<std::size_t> m;
};
ExperimentOutput run_bound_report(const BoundReportParams& p);

nlohmann::json bound_report_to_json(const BoundReport& r);

} // namespace relutil
