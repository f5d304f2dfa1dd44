#include "relutil/portfolio.hpp"

#include <cmath>
#include <stdexcept>

namespace relutil {

Portfolio::Portfolio(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw std::invalid_argument("Portfolio: empty weight vector");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("Portfolio: negative weight");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("Portfolio: weights must sum to 1 within 1e-12");
    }
}

Portfolio Portfolio::uniform(std::size_t d) {
    if (d == 0) {
        throw std::invalid_argument("Portfolio::uniform: d must be positive");
    }
    return Portfolio(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

Portfolio Portfolio::unit(std::size_t d, std::size_t j) {
    if (j >= d) {
        throw std::invalid_argument("Portfolio::unit: index out of range");
    }
    std::vector<double> w(d, 0.0);
    w[j] = 1.0;
    return Portfolio(std::move(w));
}

Portfolio Portfolio::normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("Portfolio::normalized: negative weight");
        }
        sum += w;
    }
    if (!(sum > 0.0)) {
        throw std::invalid_argument("Portfolio::normalized: weights sum to zero");
    }
    for (double& w : weights) {
        w /= sum;
    }
    return Portfolio(std::move(weights));
}

Portfolio prune_and_renormalize(const Portfolio& nu, double threshold) {
    std::vector<double> w = nu.weights();
    double sum = 0.0;
    for (double& x : w) {
        if (x < threshold) {
            x = 0.0;
        }
        sum += x;
    }
    if (sum <= 0.0) {
        throw std::invalid_argument("prune_and_renormalize: all weights below threshold");
    }
    for (double& x : w) {
        x /= sum;
    }
    return Portfolio(std::move(w));
}

} // namespace relutil
