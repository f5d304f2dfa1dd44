#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "relutil/returns.hpp"
#include "relutil/rng.hpp"
#include "relutil/utility.hpp"

namespace relutil {

// Inputs of the high-probability bound calculus. K and A are the Holder
// constant and payoff-ratio bound; for power utility K = A = 1 is valid and
// is the default. L_n and m are only needed for the averaged-SEG bound.
struct BoundInputs {
    std::size_t n = 1;
    std::size_t d = 2;
    double alpha = 1.0;
    double K = 1.0;
    double A = 1.0;
    double delta = 0.05;
    std::optional<double> L_n;
    std::optional<std::size_t> m;
};

struct BoundReport {
    double deviation = 0.0;              // sqrt(ln(1/delta) / (2n))
    double rademacher_bound = 0.0;       // complexity term, branch below
    double estimation_error_bound = 0.0; // holds with probability 1 - delta
    double empirical_gap_bound = 0.0;    // holds with probability 1 - delta
    std::optional<double> seg_bound;     // holds with probability 1 - 3*delta
    std::string branch;                  // "lipschitz" (alpha = 1) or "holder"
    double delta = 0.0;
};

// Bounded-differences deviation term sqrt(ln(1/delta) / (2n)).
double mcdiarmid_deviation(std::size_t n, double delta);

// The absolute constant C = 2 * C1 with C1 = 12 * integral_0^1 sqrt(ln(5/z)) dz,
// computed by adaptive quadrature (substituted to remove the endpoint
// singularity) at absolute tolerance 1e-8; the value is cached.
double dudley_constant();

// Same quadrature at a caller-chosen absolute tolerance, uncached.
double dudley_constant_quad(double abs_tol);

// Bound on E sup of the centered empirical process:
//   alpha = 1: 2*A*K*sqrt(2 ln d / n)
//   alpha < 1: C*A*K*sqrt((d-1) / (alpha*n))
double rademacher_bound(const BoundInputs& in);

// rademacher_bound + sqrt((2/n) ln(2/delta)): high-probability bound on the
// true-utility shortfall of the empirical maximizer.
double estimation_error_bound(const BoundInputs& in);

// rademacher_bound + mcdiarmid_deviation: bound on the gap between the
// empirical optimum value and the true optimum value.
double empirical_gap_bound(const BoundInputs& in);

// rademacher_bound + 3*mcdiarmid_deviation + 2*L_n*sqrt(ln d / m), the
// averaged-SEG guarantee at confidence 1 - 3*delta.
double seg_error_bound(const BoundInputs& in);

BoundReport make_bound_report(const BoundInputs& in);

struct RademacherEstimate {
    double estimate = 0.0;
    double std_error = 0.0; // Monte-Carlo standard error over trials
    std::size_t trials = 0;
};

// Monte-Carlo Rademacher complexity of the d hindsight-normalized
// single-asset payoff vectors (r_k^j / u(r_k^*))_k: the average over
// independent sign draws of (1/n) max_j sum_k eps_k r_k^j / u(r_k^*).
RademacherEstimate empirical_rademacher(const ReturnsMatrix& R, const UtilityFunction& u,
                                        std::size_t trials, RngSeed seed);

} // namespace relutil
