#pragma once

#include <span>

#include "relutil/portfolio.hpp"
#include "relutil/returns.hpp"

namespace relutil {

enum class UtilityKind { power, logarithmic };

// Which empirical objective a solver targets: the hindsight-normalized
// (relative) utility or the plain sample-average utility.
enum class Objective { relative, ordinary };

// The admitted utility family: power u(x) = x^alpha with alpha in (0, 1],
// or logarithmic u(x) = ln x. Log utility is only valid with the ordinary
// objective (normalizing by u of the best return would divide by values
// that can be zero or negative).
struct UtilityFunction {
    UtilityKind kind = UtilityKind::power;
    double alpha = 1.0;

    static UtilityFunction power(double alpha);
    static UtilityFunction logarithmic();

    [[nodiscard]] bool is_power() const { return kind == UtilityKind::power; }
};

// u(x); requires x > 0.
double eval_utility(const UtilityFunction& u, double x);

// D-u(x) = D+u(x) for these smooth utilities: alpha*x^(alpha-1) or 1/x.
double left_derivative(const UtilityFunction& u, double x);

// f(nu, r) = u(<nu, r>) / u(r*), r* the best single asset in hindsight.
// Power utility only; the value lies in (0, 1].
double relative_payoff(const UtilityFunction& u, const Portfolio& nu,
                       std::span<const double> r);

// Sample average of u(<nu, r_k>)/u(r_k*) (relative) or u(<nu, r_k>)
// (ordinary) over the rows of R.
double empirical_utility(const UtilityFunction& u, const Portfolio& nu,
                         const ReturnsMatrix& R, Objective objective);

} // namespace relutil
