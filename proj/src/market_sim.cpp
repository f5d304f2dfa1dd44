#include "relutil/market_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relutil/parallel.hpp"

namespace relutil {

double ScalarWithCash::daily_log_std() const {
    return sigma / std::sqrt(static_cast<double>(trading_days));
}

static void validate_scalar(const ScalarWithCash& s) {
    if (!(s.sigma > 0.0) || s.trading_days < 1) {
        throw std::invalid_argument("ScalarWithCash: sigma must be positive, trading_days >= 1");
    }
}

static void validate_multi(const MultiAsset& m) {
    std::size_t d = m.log_mean.size();
    if (d == 0 || m.log_cov.size() != d * d) {
        throw std::invalid_argument("MultiAsset: log_cov must be d x d with d >= 1");
    }
    double max_abs = 0.0;
    for (double v : m.log_cov) {
        max_abs = std::max(max_abs, std::abs(v));
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (std::abs(m.log_cov[i * d + j] - m.log_cov[j * d + i]) >
                1e-8 * std::max(1.0, max_abs)) {
                throw std::invalid_argument("MultiAsset: log_cov is not symmetric");
            }
        }
    }
}

std::size_t market_dim(const MarketSpec& spec) {
    if (std::holds_alternative<ScalarWithCash>(spec)) {
        return 2;
    }
    return std::get<MultiAsset>(spec).dim();
}

nlohmann::json market_spec_to_json(const MarketSpec& spec) {
    nlohmann::json j;
    if (const auto* s = std::get_if<ScalarWithCash>(&spec)) {
        j["model"] = "scalar";
        j["mu"] = s->mu;
        j["sigma"] = s->sigma;
        j["trading_days"] = s->trading_days;
        return j;
    }
    const auto& m = std::get<MultiAsset>(spec);
    j["model"] = "multi";
    j["log_mean"] = m.log_mean;
    std::size_t d = m.dim();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < d; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < d; ++k) {
            row.push_back(m.log_cov[i * d + k]);
        }
        rows.push_back(std::move(row));
    }
    j["log_cov"] = std::move(rows);
    return j;
}

MarketSpec market_spec_from_json(const nlohmann::json& j) {
    std::string model = j.at("model").get<std::string>();
    if (model == "scalar") {
        ScalarWithCash s;
        s.mu = j.at("mu").get<double>();
        s.sigma = j.at("sigma").get<double>();
        s.trading_days = j.value("trading_days", 252);
        validate_scalar(s);
        return s;
    }
    if (model == "multi") {
        MultiAsset m;
        m.log_mean = j.at("log_mean").get<std::vector<double>>();
        std::size_t d = m.log_mean.size();
        const auto& rows = j.at("log_cov");
        if (!rows.is_array() || rows.size() != d) {
            throw std::invalid_argument("market spec: log_cov must have d rows");
        }
        m.log_cov.reserve(d * d);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != d) {
                throw std::invalid_argument("market spec: log_cov rows must have d entries");
            }
            for (const auto& v : row) {
                m.log_cov.push_back(v.get<double>());
            }
        }
        validate_multi(m);
        return m;
    }
    throw std::invalid_argument("market spec: model must be 'scalar' or 'multi'");
}

namespace {

// Draws one day of returns; shared by the matrix generators and the
// streaming Monte-Carlo loops so all of them see identical rows for a
// given seed.
class RowSampler {
  public:
    explicit RowSampler(const MarketSpec& spec) {
        if (const auto* s = std::get_if<ScalarWithCash>(&spec)) {
            validate_scalar(*s);
            scalar_ = true;
            mean_ = s->daily_log_mean();
            std_ = s->daily_log_std();
            dim_ = 2;
            return;
        }
        const auto& m = std::get<MultiAsset>(spec);
        validate_multi(m);
        scalar_ = false;
        dim_ = m.dim();
        log_mean_ = m.log_mean;
        factor_ = pivoted_cholesky(m.log_cov, dim_);
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }

    void sample(Rng& rng, double* out, std::vector<double>& scratch) const {
        if (scalar_) {
            out[0] = 1.0;
            out[1] = std::exp(mean_ + std_ * rng.normal());
            return;
        }
        scratch.resize(factor_.rank);
        for (std::size_t j = 0; j < factor_.rank; ++j) {
            scratch[j] = rng.normal();
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            double x = log_mean_[i];
            const double* g = factor_.G.data() + i * factor_.rank;
            for (std::size_t j = 0; j < factor_.rank; ++j) {
                x += g[j] * scratch[j];
            }
            out[i] = std::exp(x);
        }
    }

  private:
    bool scalar_ = true;
    std::size_t dim_ = 0;
    double mean_ = 0.0;
    double std_ = 0.0;
    std::vector<double> log_mean_;
    PsdFactor factor_;
};

} // namespace

ReturnsMatrix gen_scalar_bs(const ScalarWithCash& spec, std::size_t n, RngSeed seed) {
    return gen_market(MarketSpec{spec}, n, seed);
}

ReturnsMatrix gen_multi_bs(const std::vector<double>& log_mean,
                           const std::vector<double>& log_cov, std::size_t n,
                           RngSeed seed) {
    return gen_market(MarketSpec{MultiAsset{log_mean, log_cov}}, n, seed);
}

ReturnsMatrix gen_market(const MarketSpec& spec, std::size_t n, RngSeed seed) {
    if (n == 0) {
        throw std::invalid_argument("gen_market: n must be positive");
    }
    RowSampler sampler(spec);
    std::size_t d = sampler.dim();
    std::vector<double> values(n * d);
    std::vector<double> scratch;
    Rng rng(seed);
    for (std::size_t k = 0; k < n; ++k) {
        sampler.sample(rng, values.data() + k * d, scratch);
    }
    return ReturnsMatrix(n, d, std::move(values));
}

std::pair<std::vector<double>, std::vector<double>>
estimate_log_moments(const ReturnsMatrix& R) {
    if (R.rows() < 2) {
        throw std::invalid_argument("estimate_log_moments: need at least 2 rows");
    }
    const std::size_t n = R.rows();
    const std::size_t d = R.cols();
    std::vector<double> logs(n * d);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            logs[k * d + i] = std::log(R(k, i));
        }
    }
    std::vector<double> mean(d, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            mean[i] += logs[k * d + i];
        }
    }
    for (double& m : mean) {
        m /= static_cast<double>(n);
    }
    std::vector<double> cov(d * d, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* row = logs.data() + k * d;
        for (std::size_t i = 0; i < d; ++i) {
            double ci = row[i] - mean[i];
            for (std::size_t j = i; j < d; ++j) {
                cov[i * d + j] += ci * (row[j] - mean[j]);
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            cov[i * d + j] /= static_cast<double>(n - 1);
            cov[j * d + i] = cov[i * d + j];
        }
    }
    return {std::move(mean), std::move(cov)};
}

PsdFactor pivoted_cholesky(const std::vector<double>& A, std::size_t d,
                           double rel_tol) {
    if (d == 0 || A.size() != d * d) {
        throw std::invalid_argument("pivoted_cholesky: A must be d x d with d >= 1");
    }
    std::vector<double> diag(d);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        diag[i] = A[i * d + i];
        max_diag = std::max(max_diag, std::abs(diag[i]));
    }
    double tol = rel_tol * std::max(max_diag, 1e-300);

    PsdFactor f;
    f.dim = d;
    f.G.assign(d * d, 0.0);
    std::vector<bool> pivoted(d, false);

    for (std::size_t k = 0; k < d; ++k) {
        std::size_t p = d;
        double best = -1.0;
        double lowest = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (pivoted[i]) {
                continue;
            }
            if (diag[i] > best) {
                best = diag[i];
                p = i;
            }
            lowest = std::min(lowest, diag[i]);
        }
        if (lowest < -tol) {
            throw std::invalid_argument("pivoted_cholesky: matrix is indefinite");
        }
        if (p == d || best <= tol) {
            break; // remaining mass is numerically zero: rank found
        }
        double gpp = std::sqrt(best);
        f.G[p * d + k] = gpp;
        for (std::size_t i = 0; i < d; ++i) {
            if (pivoted[i] || i == p) {
                continue;
            }
            double s = A[i * d + p];
            for (std::size_t j = 0; j < k; ++j) {
                s -= f.G[i * d + j] * f.G[p * d + j];
            }
            double gik = s / gpp;
            f.G[i * d + k] = gik;
            diag[i] -= gik * gik;
        }
        pivoted[p] = true;
        diag[p] = 0.0;
        ++f.rank;
    }

    // Compact to d x rank.
    std::vector<double> G(d * f.rank);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < f.rank; ++j) {
            G[i * f.rank + j] = f.G[i * d + j];
        }
    }
    f.G = std::move(G);
    return f;
}

double mc_true_utility(const UtilityFunction& u, const Portfolio& nu,
                       const MarketSpec& spec, std::size_t N, RngSeed seed) {
    if (N == 0) {
        throw std::invalid_argument("mc_true_utility: N must be positive");
    }
    if (!u.is_power()) {
        throw std::invalid_argument("mc_true_utility: true relative utility requires power utility");
    }
    RowSampler sampler(spec);
    const std::size_t d = sampler.dim();
    if (nu.size() != d) {
        throw std::invalid_argument("mc_true_utility: dimension mismatch");
    }
    constexpr std::size_t kBlock = 65536;
    const std::size_t blocks = (N + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    const double alpha = u.alpha;

    parallel_for(blocks, [&](std::size_t b) {
        std::size_t count = std::min(kBlock, N - b * kBlock);
        Rng rng(seed.child(b));
        std::vector<double> row(d);
        std::vector<double> scratch;
        double sum = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            sampler.sample(rng, row.data(), scratch);
            double dot = 0.0;
            double r_star = row[0];
            for (std::size_t i = 0; i < d; ++i) {
                dot += nu[i] * row[i];
                r_star = std::max(r_star, row[i]);
            }
            sum += std::pow(dot / r_star, alpha);
        }
        partial[b] = sum;
    });
    return tree_sum(partial) / static_cast<double>(N);
}

std::vector<double> sample_annual_wealth(const MarketSpec& spec, const Portfolio& nu,
                                         std::size_t paths, RngSeed seed) {
    if (paths == 0) {
        throw std::invalid_argument("sample_annual_wealth: paths must be positive");
    }
    RowSampler sampler(spec);
    const std::size_t d = sampler.dim();
    if (nu.size() != d) {
        throw std::invalid_argument("sample_annual_wealth: dimension mismatch");
    }
    std::vector<double> wealth(paths);
    parallel_for(paths, [&](std::size_t p) {
        Rng rng(seed.child(p));
        std::vector<double> row(d);
        std::vector<double> scratch;
        double log_sum = 0.0;
        for (int day = 0; day < 252; ++day) {
            sampler.sample(rng, row.data(), scratch);
            double x = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                x += nu[i] * row[i];
            }
            log_sum += std::log(x);
        }
        wealth[p] = std::exp(log_sum);
    });
    return wealth;
}

} // namespace relutil
