#pragma once

#include <vector>

#include "relutil/portfolio.hpp"
#include "relutil/returns.hpp"

namespace relutil {

// Wealth after rebalancing to nu every day: prod_t <nu, r_t>, computed in
// log space for numerical stability.
double accumulated_wealth(const Portfolio& nu, const ReturnsMatrix& R);

// X_n^(252/n), the constant-per-year growth factor matching X_n over n days.
double annual_return(double wealth, std::size_t n);

// Sample standard deviation (divisor n-1) of the daily portfolio returns
// <nu, r_k>, annualized by sqrt(252). Requires n >= 2.
double annual_volatility(const Portfolio& nu, const ReturnsMatrix& R);

// Summary statistics of a sample (Table-style reporting).
struct SampleSummary {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0; // divisor n-1
    double p05 = 0.0;
    double p95 = 0.0;
};

// Linear-interpolation percentile on the sorted sample: rank q*(n-1).
double percentile(std::vector<double> sample, double q);

SampleSummary summarize(const std::vector<double>& sample);

} // namespace relutil
