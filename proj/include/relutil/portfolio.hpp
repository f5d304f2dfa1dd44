#pragma once

#include <cstddef>
#include <vector>

namespace relutil {

// A weight vector on the probability simplex: nonnegative entries summing
// to 1 within 1e-12. Immutable once constructed.
class Portfolio {
  public:
    explicit Portfolio(std::vector<double> weights);

    static Portfolio uniform(std::size_t d);
    // All mass on asset j.
    static Portfolio unit(std::size_t d, std::size_t j);
    // Scales a nonnegative vector with positive sum to the simplex; accepts
    // rounded weights whose raw sum is only approximately 1.
    static Portfolio normalized(std::vector<double> weights);

    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

  private:
    std::vector<double> weights_;
};

// Zeroes weights below threshold and renormalizes the survivors. Throws if
// every weight is below threshold.
Portfolio prune_and_renormalize(const Portfolio& nu, double threshold = 0.001);

} // namespace relutil
