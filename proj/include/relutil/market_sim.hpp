#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "relutil/portfolio.hpp"
#include "relutil/returns.hpp"
#include "relutil/rng.hpp"
#include "relutil/utility.hpp"

namespace relutil {

// Two-column market: a cash asset fixed at 1 and one risky asset whose
// daily return is exp((mu - sigma^2/2)/T + (sigma/sqrt(T)) Z).
struct ScalarWithCash {
    double mu = 0.15;
    double sigma = 0.45;
    int trading_days = 252;

    [[nodiscard]] double daily_log_mean() const {
        return (mu - sigma * sigma / 2.0) / trading_days;
    }
    [[nodiscard]] double daily_log_std() const;
};

// d assets with jointly lognormal daily returns: ln r_k ~ N(log_mean,
// log_cov), i.i.d. over days. log_cov is d x d row-major.
struct MultiAsset {
    std::vector<double> log_mean;
    std::vector<double> log_cov;

    [[nodiscard]] std::size_t dim() const { return log_mean.size(); }
};

using MarketSpec = std::variant<ScalarWithCash, MultiAsset>;

std::size_t market_dim(const MarketSpec& spec);

nlohmann::json market_spec_to_json(const MarketSpec& spec);
MarketSpec market_spec_from_json(const nlohmann::json& j);

ReturnsMatrix gen_scalar_bs(const ScalarWithCash& spec, std::size_t n, RngSeed seed);

// Sample mean and covariance (divisor n-1) of the row-wise log returns.
std::pair<std::vector<double>, std::vector<double>>
estimate_log_moments(const ReturnsMatrix& R);

// Rank-revealing factorization A = G G^T of a symmetric positive
// semidefinite matrix, with diagonal pivoting. Columns of G beyond the
// detected rank are dropped; a remaining diagonal below -tol reports the
// input as indefinite.
struct PsdFactor {
    std::size_t dim = 0;
    std::size_t rank = 0;
    std::vector<double> G; // dim x rank, row-major
};

PsdFactor pivoted_cholesky(const std::vector<double>& A, std::size_t d,
                           double rel_tol = 1e-12);

ReturnsMatrix gen_multi_bs(const std::vector<double>& log_mean,
                           const std::vector<double>& log_cov, std::size_t n,
                           RngSeed seed);

ReturnsMatrix gen_market(const MarketSpec& spec, std::size_t n, RngSeed seed);

// Monte-Carlo estimate of the true relative utility U(nu) = E u(<nu,r>)/u(r*)
// over N fresh rows. N is split into fixed 65536-row blocks with one seed
// substream per block and a pairwise-tree reduction, so the value does not
// depend on the worker count.
double mc_true_utility(const UtilityFunction& u, const Portfolio& nu,
                       const MarketSpec& spec, std::size_t N, RngSeed seed);

// One year of wealth per path: X_252 = prod of 252 daily portfolio returns,
// one seed substream per path.
std::vector<double> sample_annual_wealth(const MarketSpec& spec, const Portfolio& nu,
                                         std::size_t paths, RngSeed seed);

} // namespace relutil
