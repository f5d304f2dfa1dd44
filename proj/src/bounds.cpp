#include "relutil/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "relutil/parallel.hpp"

namespace relutil {

static void validate(const BoundInputs& in) {
    if (in.n < 1 || in.d < 2) {
        throw std::invalid_argument("bounds: need n >= 1 and d >= 2");
    }
    if (!(in.alpha > 0.0) || !(in.alpha <= 1.0)) {
        throw std::invalid_argument("bounds: alpha must lie in (0, 1]");
    }
    if (!(in.K > 0.0) || !(in.A > 0.0)) {
        throw std::invalid_argument("bounds: K and A must be positive");
    }
    if (!(in.delta > 0.0) || !(in.delta < 1.0)) {
        throw std::invalid_argument("bounds: delta must lie in (0, 1)");
    }
}

double mcdiarmid_deviation(std::size_t n, double delta) {
    if (n < 1) {
        throw std::invalid_argument("mcdiarmid_deviation: n must be >= 1");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("mcdiarmid_deviation: delta must lie in (0, 1)");
    }
    return std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

namespace {

// Adaptive Simpson on [a, b] with error recycling.
double simpson(double a, double fa, double b, double fb, double fm,
               double whole, double tol, int depth,
               double (*f)(double)) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson(a, fa, m, fm, flm, left, tol / 2.0, depth - 1, f) +
           simpson(m, fm, b, fb, frm, right, tol / 2.0, depth - 1, f);
}

double adaptive_simpson(double (*f)(double), double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(a, fa, b, fb, fm, whole, tol, 48, f);
}

// Integrand after substituting z = e^-t into sqrt(ln(5/z)): the endpoint
// derivative singularity at z = 0 becomes an exponentially decaying tail.
double tail_integrand(double t) {
    return std::sqrt(std::log(5.0) + t) * std::exp(-t);
}

} // namespace

double dudley_constant_quad(double abs_tol) {
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("dudley_constant_quad: tolerance must be positive");
    }
    // Tail beyond t = 60 is below 1e-24; quadrature tolerance split across
    // the integral and then scaled by the 12 * 2 prefactor.
    double integral = adaptive_simpson(tail_integrand, 0.0, 60.0, abs_tol / 24.0);
    return 2.0 * 12.0 * integral;
}

double dudley_constant() {
    static const double cached = dudley_constant_quad(1e-8);
    return cached;
}

double rademacher_bound(const BoundInputs& in) {
    validate(in);
    double n = static_cast<double>(in.n);
    double d = static_cast<double>(in.d);
    if (in.alpha == 1.0) {
        return 2.0 * in.A * in.K * std::sqrt(2.0 * std::log(d) / n);
    }
    return dudley_constant() * in.A * in.K * std::sqrt((d - 1.0) / (in.alpha * n));
}

double estimation_error_bound(const BoundInputs& in) {
    validate(in);
    double n = static_cast<double>(in.n);
    return rademacher_bound(in) + std::sqrt(2.0 / n * std::log(2.0 / in.delta));
}

double empirical_gap_bound(const BoundInputs& in) {
    validate(in);
    return rademacher_bound(in) + mcdiarmid_deviation(in.n, in.delta);
}

double seg_error_bound(const BoundInputs& in) {
    validate(in);
    if (!in.L_n || !in.m) {
        throw std::invalid_argument("seg_error_bound: L_n and m are required");
    }
    if (!(*in.L_n > 0.0) || *in.m < 1) {
        throw std::invalid_argument("seg_error_bound: need L_n > 0 and m >= 1");
    }
    double d = static_cast<double>(in.d);
    double m = static_cast<double>(*in.m);
    return rademacher_bound(in) + 3.0 * mcdiarmid_deviation(in.n, in.delta) +
           2.0 * (*in.L_n) * std::sqrt(std::log(d) / m);
}

BoundReport make_bound_report(const BoundInputs& in) {
    validate(in);
    BoundReport r;
    r.deviation = mcdiarmid_deviation(in.n, in.delta);
    r.rademacher_bound = rademacher_bound(in);
    r.estimation_error_bound = estimation_error_bound(in);
    r.empirical_gap_bound = empirical_gap_bound(in);
    if (in.L_n && in.m) {
        r.seg_bound = seg_error_bound(in);
    }
    r.branch = (in.alpha == 1.0) ? "lipschitz" : "holder";
    r.delta = in.delta;
    return r;
}

RademacherEstimate empirical_rademacher(const ReturnsMatrix& R, const UtilityFunction& u,
                                        std::size_t trials, RngSeed seed) {
    if (trials < 1) {
        throw std::invalid_argument("empirical_rademacher: trials must be >= 1");
    }
    if (!u.is_power()) {
        throw std::invalid_argument("empirical_rademacher: power utility required");
    }
    const std::size_t n = R.rows();
    const std::size_t d = R.cols();
    // Normalized payoff vectors a_k^j = r_k^j / u(r_k^*).
    std::vector<double> a(n * d);
    for (std::size_t k = 0; k < n; ++k) {
        auto row = R.row(k);
        auto [j, r_star] = best_return(row);
        (void)j;
        double denom = std::pow(r_star, u.alpha);
        for (std::size_t i = 0; i < d; ++i) {
            a[k * d + i] = row[i] / denom;
        }
    }
    std::vector<double> per_trial(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(seed.child(t));
        std::vector<double> acc(d, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double eps = rng.below(2) == 0 ? -1.0 : 1.0;
            const double* row = a.data() + k * d;
            for (std::size_t i = 0; i < d; ++i) {
                acc[i] += eps * row[i];
            }
        }
        double mx = acc[0];
        for (std::size_t i = 1; i < d; ++i) {
            mx = std::max(mx, acc[i]);
        }
        per_trial[t] = mx / static_cast<double>(n);
    });
    RademacherEstimate est;
    est.trials = trials;
    est.estimate = tree_sum(per_trial) / static_cast<double>(trials);
    if (trials > 1) {
        double ss = 0.0;
        for (double v : per_trial) {
            ss += (v - est.estimate) * (v - est.estimate);
        }
        est.std_error = std::sqrt(ss / static_cast<double>(trials - 1) /
                                  static_cast<double>(trials));
    }
    return est;
}

} // namespace relutil
