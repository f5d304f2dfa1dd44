#include "relutil/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relutil {

static double portfolio_return(const Portfolio& nu, std::span<const double> r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        s += nu[i] * r[i];
    }
    return s;
}

double accumulated_wealth(const Portfolio& nu, const ReturnsMatrix& R) {
    if (nu.size() != R.cols()) {
        throw std::invalid_argument("accumulated_wealth: dimension mismatch");
    }
    double log_sum = 0.0;
    for (std::size_t k = 0; k < R.rows(); ++k) {
        double x = portfolio_return(nu, R.row(k));
        if (!(x > 0.0)) {
            throw std::domain_error("accumulated_wealth: nonpositive portfolio return");
        }
        log_sum += std::log(x);
    }
    return std::exp(log_sum);
}

double annual_return(double wealth, std::size_t n) {
    if (!(wealth > 0.0) || n == 0) {
        throw std::invalid_argument("annual_return: wealth must be positive, n >= 1");
    }
    return std::pow(wealth, 252.0 / static_cast<double>(n));
}

double annual_volatility(const Portfolio& nu, const ReturnsMatrix& R) {
    if (R.rows() < 2) {
        throw std::invalid_argument("annual_volatility: need at least 2 rows");
    }
    if (nu.size() != R.cols()) {
        throw std::invalid_argument("annual_volatility: dimension mismatch");
    }
    const std::size_t n = R.rows();
    double mean = 0.0;
    std::vector<double> daily(n);
    for (std::size_t k = 0; k < n; ++k) {
        daily[k] = portfolio_return(nu, R.row(k));
        mean += daily[k];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : daily) {
        ss += (x - mean) * (x - mean);
    }
    double var = ss / static_cast<double>(n - 1);
    return std::sqrt(var) * std::sqrt(252.0);
}

double percentile(std::vector<double> sample, double q) {
    if (sample.empty()) {
        throw std::invalid_argument("percentile: empty sample");
    }
    if (!(q >= 0.0) || !(q <= 1.0)) {
        throw std::invalid_argument("percentile: q must lie in [0, 1]");
    }
    std::sort(sample.begin(), sample.end());
    double rank = q * static_cast<double>(sample.size() - 1);
    std::size_t lo = static_cast<std::size_t>(rank);
    double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= sample.size()) {
        return sample.back();
    }
    return sample[lo] + frac * (sample[lo + 1] - sample[lo]);
}

SampleSummary summarize(const std::vector<double>& sample) {
    if (sample.size() < 2) {
        throw std::invalid_argument("summarize: need at least 2 values");
    }
    SampleSummary s;
    double mean = 0.0;
    for (double x : sample) {
        mean += x;
    }
    mean /= static_cast<double>(sample.size());
    double ss = 0.0;
    for (double x : sample) {
        ss += (x - mean) * (x - mean);
    }
    s.mean = mean;
    s.stddev = std::sqrt(ss / static_cast<double>(sample.size() - 1));
    s.median = percentile(sample, 0.5);
    s.p05 = percentile(sample, 0.05);
    s.p95 = percentile(sample, 0.95);
    return s;
}

} // namespace relutil
