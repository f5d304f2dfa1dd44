#include "relutil/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace relutil {

UtilityFunction UtilityFunction::power(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
        throw std::invalid_argument("power utility requires alpha in (0, 1]");
    }
    return UtilityFunction{UtilityKind::power, alpha};
}

UtilityFunction UtilityFunction::logarithmic() {
    return UtilityFunction{UtilityKind::logarithmic, 0.0};
}

double eval_utility(const UtilityFunction& u, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("eval_utility requires x > 0");
    }
    if (u.kind == UtilityKind::power) {
        return std::pow(x, u.alpha);
    }
    return std::log(x);
}

double left_derivative(const UtilityFunction& u, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("left_derivative requires x > 0");
    }
    if (u.kind == UtilityKind::power) {
        return u.alpha * std::pow(x, u.alpha - 1.0);
    }
    return 1.0 / x;
}

static double dot(const Portfolio& nu, std::span<const double> r) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        s += nu[i] * r[i];
    }
    return s;
}

double relative_payoff(const UtilityFunction& u, const Portfolio& nu,
                       std::span<const double> r) {
    if (!u.is_power()) {
        throw std::invalid_argument("relative_payoff requires power utility");
    }
    if (nu.size() != r.size()) {
        throw std::invalid_argument("relative_payoff: dimension mismatch");
    }
    for (double v : r) {
        if (!(v > 0.0)) {
            throw std::domain_error("relative_payoff requires positive returns");
        }
    }
    auto [j, r_star] = best_return(r);
    (void)j;
    return std::pow(dot(nu, r) / r_star, u.alpha);
}

double empirical_utility(const UtilityFunction& u, const Portfolio& nu,
                         const ReturnsMatrix& R, Objective objective) {
    if (nu.size() != R.cols()) {
        throw std::invalid_argument("empirical_utility: dimension mismatch");
    }
    if (objective == Objective::relative && !u.is_power()) {
        throw std::invalid_argument(
            "empirical_utility: relative objective requires power utility");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < R.rows(); ++k) {
        auto r = R.row(k);
        double x = dot(nu, r);
        if (!(x > 0.0)) {
            throw std::domain_error("empirical_utility: nonpositive portfolio return");
        }
        if (objective == Objective::relative) {
            auto [j, r_star] = best_return(r);
            (void)j;
            sum += std::pow(x / r_star, u.alpha);
        } else {
            sum += eval_utility(u, x);
        }
    }
    return sum / static_cast<double>(R.rows());
}

} // namespace relutil
