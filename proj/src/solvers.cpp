#include "relutil/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relutil/parallel.hpp"

namespace relutil {

double bisect_two_asset(const UtilityFunction& u, const ReturnsMatrix& R,
                        Objective objective, double tol) {
    if (!u.is_power()) {
        throw std::invalid_argument("bisect_two_asset: power utility required");
    }
    if (R.cols() != 2) {
        throw std::invalid_argument("bisect_two_asset: matrix must have 2 columns");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("bisect_two_asset: tol must be positive");
    }
    const std::size_t n = R.rows();
    std::vector<double> c(n);
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (R(k, 0) != 1.0) {
            throw std::invalid_argument("bisect_two_asset: column 0 must be identically 1");
        }
        double r2 = R(k, 1);
        if (objective == Objective::relative) {
            double mx = std::max(1.0, r2);
            c[k] = 1.0 / mx;
            b[k] = (r2 - 1.0) / mx;
        } else {
            c[k] = 1.0;
            b[k] = r2 - 1.0;
        }
    }
    const double alpha = u.alpha;
    const double am1 = alpha - 1.0;
    auto deriv = [&](double nu) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += std::pow(c[k] + b[k] * nu, am1) * b[k];
        }
        return alpha * s / static_cast<double>(n);
    };
    if (deriv(0.0) <= 0.0) {
        return 0.0;
    }
    if (deriv(1.0) >= 0.0) {
        return 1.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (deriv(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double lipschitz_constant(const UtilityFunction& u, const ReturnRange& range) {
    if (!u.is_power()) {
        throw std::invalid_argument("lipschitz_constant: power utility required");
    }
    if (!(range.r_min > 0.0) || !(range.r_min <= range.r_max)) {
        throw std::invalid_argument("lipschitz_constant: need 0 < r_min <= r_max");
    }
    return u.alpha * std::pow(range.r_max / range.r_min, 1.0 - u.alpha);
}

Portfolio eg_step(const Portfolio& nu, std::span<const double> r_scaled, double eta,
                  const UtilityFunction& u) {
    if (!u.is_power()) {
        throw std::invalid_argument("eg_step: power utility required");
    }
    if (!(eta >= 0.0)) {
        throw std::invalid_argument("eg_step: eta must be nonnegative");
    }
    if (nu.size() != r_scaled.size()) {
        throw std::invalid_argument("eg_step: dimension mismatch");
    }
    double x = 0.0;
    for (std::size_t i = 0; i < r_scaled.size(); ++i) {
        if (!(r_scaled[i] > 0.0) || r_scaled[i] > 1.0) {
            throw std::invalid_argument("eg_step: scaled returns must lie in (0, 1]");
        }
        x += nu[i] * r_scaled[i];
    }
    double grad_scale = left_derivative(u, x);
    std::vector<double> a(nu.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        a[i] = nu[i] * std::exp(eta * grad_scale * r_scaled[i]);
        sum += a[i];
    }
    for (double& w : a) {
        w /= sum;
    }
    return Portfolio(std::move(a));
}

SegResult seg_average(const ReturnsMatrix& R, const UtilityFunction& u,
                      const SegConfig& cfg, RngSeed seed) {
    if (cfg.m < 1) {
        throw std::invalid_argument("seg_average: m must be >= 1");
    }
    const std::size_t n = R.rows();
    const std::size_t d = R.cols();
    ReturnsMatrix W = normalize_by_best(R);
    double L = lipschitz_constant(u, return_range(R));
    double eta = (d > 1) ? std::sqrt(std::log(static_cast<double>(d)) /
                                     static_cast<double>(cfg.m)) /
                               L
                         : 0.0;

    Rng rng(seed);
    std::vector<double> nu(d, 1.0 / static_cast<double>(d));
    std::vector<double> avg(d, 0.0);
    std::vector<std::size_t> drawn(cfg.m);
    double played = 0.0; // sum over steps of the payoff of the current iterate
    Portfolio current(nu);
    for (std::size_t j = 0; j < cfg.m; ++j) {
        std::size_t k = rng.below(n);
        drawn[j] = k;
        for (std::size_t i = 0; i < d; ++i) {
            avg[i] += current[i];
        }
        auto row = W.row(k);
        double x = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x += current[i] * row[i];
        }
        played += std::pow(x, u.alpha);
        current = eg_step(current, row, eta, u);
    }
    for (double& w : avg) {
        w /= static_cast<double>(cfg.m);
    }
    Portfolio average{std::move(avg)};

    // Comparator payoffs on the drawn sequence.
    auto sequence_payoff = [&](const Portfolio& p) {
        double s = 0.0;
        for (std::size_t k : drawn) {
            auto row = W.row(k);
            double x = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                x += p[i] * row[i];
            }
            s += std::pow(x, u.alpha);
        }
        return s;
    };
    double best = sequence_payoff(Portfolio::uniform(d));
    for (std::size_t i = 0; i < d; ++i) {
        best = std::max(best, sequence_payoff(Portfolio::unit(d, i)));
    }
    best = std::max(best, sequence_payoff(average));

    SegResult out{std::move(average), best - played,
                  2.0 * L *
                      std::sqrt(static_cast<double>(cfg.m) *
                                std::log(static_cast<double>(d))),
                  eta, L};
    return out;
}

namespace {

double mean_utility(const std::vector<double>& values, std::size_t n, std::size_t d,
                    const std::vector<double>& nu, bool log_u, double alpha) {
    double sum = 0.0;
    const double* row = values.data();
    for (std::size_t k = 0; k < n; ++k, row += d) {
        double x = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x += nu[i] * row[i];
        }
        sum += log_u ? std::log(x) : std::pow(x, alpha);
    }
    return sum / static_cast<double>(n);
}

} // namespace

std::pair<Portfolio, SolveTrace> gdseg(const ReturnsMatrix& R, const UtilityFunction& u,
                                       Objective objective, const GdsegConfig& cfg) {
    if (!(cfg.eta_max > 0.0) || cfg.n_attempts < 1 || !(cfg.threshold > 0.0)) {
        throw std::invalid_argument("gdseg: invalid config");
    }
    if (objective == Objective::relative && !u.is_power()) {
        throw std::invalid_argument("gdseg: relative objective requires power utility");
    }
    const std::size_t n = R.rows();
    const std::size_t d = R.cols();
    const bool log_u = !u.is_power();
    // With rows scaled to max 1, the hindsight denominator is u(1) and the
    // relative objective reduces to the ordinary one on the scaled matrix.
    std::vector<double> scaled;
    if (objective == Objective::relative) {
        scaled = normalize_by_best(R).values();
    }
    const std::vector<double>& values =
        (objective == Objective::relative) ? scaled : R.values();
    const double alpha = u.alpha;
    const double power_exp = log_u ? 1.0 : 1.0 - alpha;

    SolveTrace trace;
    std::vector<double> nu(d, 1.0 / static_cast<double>(d));
    double cur = mean_utility(values, n, d, nu, log_u, alpha);
    trace.objective_history.emplace_back(0, cur);
    if (d == 1) {
        return {Portfolio(std::move(nu)), std::move(trace)};
    }

    Rng rng(cfg.seed);
    std::vector<double> cand(d);
    std::size_t failures = 0;
    while (failures < cfg.n_attempts) {
        std::size_t k = rng.below(n);
        double eta = rng.uniform_in(0.0, cfg.eta_max);
        const double* row = values.data() + k * d;
        double x = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x += nu[i] * row[i];
        }
        double denom = std::pow(x, power_exp);
        double sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cand[i] = nu[i] * std::exp(eta * row[i] / denom);
            sum += cand[i];
        }
        for (double& w : cand) {
            w /= sum;
        }
        ++trace.attempts;
        double val = mean_utility(values, n, d, cand, log_u, alpha);
        if (val >= cur + cfg.threshold) {
            nu.swap(cand);
            cur = val;
            failures = 0;
            trace.objective_history.emplace_back(trace.attempts, cur);
        } else {
            ++failures;
        }
    }
    return {Portfolio(std::move(nu)), std::move(trace)};
}

Portfolio best_of_k_gdseg(const ReturnsMatrix& R, const UtilityFunction& u,
                          Objective objective, const GdsegConfig& cfg, std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("best_of_k_gdseg: k must be >= 1");
    }
    std::vector<std::vector<double>> winners(k);
    std::vector<double> scores(k);
    parallel_for(k, [&](std::size_t run) {
        GdsegConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed.child(run);
        auto [p, trace] = gdseg(R, u, objective, run_cfg);
        winners[run] = p.weights();
        scores[run] = trace.objective_history.back().second;
    });
    std::size_t best = 0;
    for (std::size_t run = 1; run < k; ++run) {
        if (scores[run] > scores[best]) {
            best = run;
        }
    }
    return prune_and_renormalize(Portfolio(winners[best]));
}

} // namespace relutil
