#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "relutil/portfolio.hpp"
#include "relutil/returns.hpp"
#include "relutil/rng.hpp"
#include "relutil/utility.hpp"

namespace relutil {

// Greedy doubly stochastic exponentiated gradient parameters. Defaults are
// the reference values used throughout the experiments.
struct GdsegConfig {
    double eta_max = 1.0;
    std::size_t n_attempts = 10000;
    double threshold = 1e-10;
    RngSeed seed;
};

struct SegConfig {
    std::size_t m = 1;
    double delta = 0.05;
};

// Progress record of an accept/reject solver run. objective_history holds
// (total attempt count, objective) at the start and at every accepted step;
// the objective increases by at least the acceptance threshold per entry.
struct SolveTrace {
    std::size_t attempts = 0;
    std::vector<std::pair<std::size_t, double>> objective_history;
};

// Closed-form-free maximizer for the two-asset cash + risky market: finds
// the root of the empirical-utility derivative by bisection on [0, 1] with
// endpoint sign checks, returning the weight of the risky asset. Column 0
// must be identically 1. tol bounds the argument bracket width.
double bisect_two_asset(const UtilityFunction& u, const ReturnsMatrix& R,
                        Objective objective, double tol = 1e-10);

// Lipschitz constant of the relative payoff over a return range:
// D-u(r_min) * r_max / u(r_max); for power utility alpha*(r_max/r_min)^(1-alpha).
double lipschitz_constant(const UtilityFunction& u, const ReturnRange& range);

// One exponentiated-gradient step on row-max-scaled returns: multiplies each
// weight by exp(eta * D-u(<nu, r>) * r_i) and renormalizes. For power
// utility on scaled rows this reproduces the hindsight-normalized gradient
// exactly.
Portfolio eg_step(const Portfolio& nu, std::span<const double> r_scaled, double eta,
                  const UtilityFunction& u);

struct SegResult {
    Portfolio average;       // uniform average of the first m iterates
    double measured_regret;  // best fixed comparator minus the iterates, on the drawn rows
    double regret_bound;     // 2 * L_n * sqrt(m * ln d)
    double eta;
    double lipschitz;
};

// Stochastic EG with iterate averaging: m steps on rows drawn uniformly
// with replacement, learning rate sqrt(ln d / m) / L_n. The measured regret
// compares the played iterates against the best of the vertex portfolios,
// the uniform portfolio, and the returned average (a lower bound on the
// exact comparator sup, sufficient to exercise the guarantee).
SegResult seg_average(const ReturnsMatrix& R, const UtilityFunction& u,
                      const SegConfig& cfg, RngSeed seed);

// Algorithm: repeatedly pick a uniform random row k and a uniform learning
// rate in [0, eta_max], take the candidate EG step
//   a_i = nu_i * exp(eta * r_k^i / <nu, r_k>^(1-alpha))
// (for log utility the exponent is eta * r_k^i / <nu, r_k>), and accept it
// only if the full empirical utility improves by at least threshold; stop
// after n_attempts consecutive rejections. The relative objective
// pre-scales every row by its maximum.
std::pair<Portfolio, SolveTrace> gdseg(const ReturnsMatrix& R, const UtilityFunction& u,
                                       Objective objective, const GdsegConfig& cfg);

// Runs gdseg k times with seeds derived per run, keeps the run with the
// best empirical utility, and prunes negligible weights from the winner.
Portfolio best_of_k_gdseg(const ReturnsMatrix& R, const UtilityFunction& u,
                          Objective objective, const GdsegConfig& cfg, std::size_t k);

} // namespace relutil
