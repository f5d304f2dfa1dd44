#include "relutil/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "relutil/parallel.hpp"
#include "relutil/stats.hpp"

namespace relutil {

namespace {

constexpr std::uint64_t kIdTable1 = 1;
constexpr std::uint64_t kIdFig1 = 2;
constexpr std::uint64_t kIdNyseLog = 3;
constexpr std::uint64_t kIdTable4 = 4;
constexpr std::uint64_t kIdTable5 = 5;
constexpr std::uint64_t kIdFig2 = 6;

std::string hash_params(const nlohmann::json& params) {
    return git_blob_sha1(params.dump());
}

ReturnsMatrix load_dataset(const std::string& data_path, const std::string& tickers_path) {
    if (!std::filesystem::exists(data_path)) {
        throw DatasetMissing(data_path);
    }
    ReturnsMatrix R = load_returns(data_path);
    if (!tickers_path.empty() && std::filesystem::exists(tickers_path)) {
        R.set_labels(load_tickers(tickers_path));
    }
    return R;
}

std::size_t index_of(const std::vector<std::string>& labels, const std::string& name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) {
        throw std::invalid_argument("unknown ticker: " + name);
    }
    return static_cast<std::size_t>(it - labels.begin());
}

std::string weights_field(const Portfolio& p, const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        if (!out.empty()) {
            out += ';';
        }
        out += labels.empty() ? "asset" + std::to_string(i) : labels[i];
        out += '=';
        out += fmt_double(p[i], 6);
    }
    return out;
}

nlohmann::json weights_json(const Portfolio& p, const std::vector<std::string>& labels) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        std::string key = labels.empty() ? "asset" + std::to_string(i) : labels[i];
        obj[key] = p[i];
    }
    return obj;
}

// Named reference portfolios of the 19-stock dataset experiments: the
// log-optimal weights plus the per-alpha optimal portfolios under both
// objectives.
struct NamedWeights {
    const char* name;
    std::vector<std::pair<const char*, double>> weights;
};

const std::vector<NamedWeights>& reference_portfolios() {
    static const std::vector<NamedWeights> all = {
        {"log-optimal", {{"hp", 0.177}, {"morris", 0.747}, {"schlum", 0.076}}},
        {"alpha=0.01 ordinary", {{"hp", 0.1792}, {"morris", 0.7518}, {"schlum", 0.0690}}},
        {"alpha=0.01 relative", {{"hp", 0.1782}, {"morris", 0.7523}, {"schlum", 0.0695}}},
        {"alpha=0.1 ordinary", {{"hp", 0.1762}, {"morris", 0.7766}, {"schlum", 0.0473}}},
        {"alpha=0.1 relative", {{"hp", 0.1617}, {"morris", 0.7882}, {"schlum", 0.0501}}},
        {"alpha=0.2 ordinary", {{"hp", 0.1779}, {"morris", 0.8221}}},
        {"alpha=0.2 relative", {{"hp", 0.1476}, {"morris", 0.8524}}},
        {"alpha=0.3 ordinary", {{"hp", 0.1589}, {"morris", 0.8411}}},
        {"alpha=0.3 relative", {{"hp", 0.1069}, {"morris", 0.8931}}},
        {"alpha=0.5 ordinary", {{"hp", 0.0972}, {"morris", 0.9028}}},
        {"alpha=0.5 relative", {{"morris", 1.0}}},
        {"alpha=0.75 ordinary", {{"morris", 1.0}}},
        {"alpha=0.75 relative", {{"morris", 1.0}}},
    };
    return all;
}

Portfolio build_named(const NamedWeights& nw, const std::vector<std::string>& labels,
                      std::size_t d) {
    std::vector<double> w(d, 0.0);
    for (const auto& [ticker, weight] : nw.weights) {
        w[index_of(labels, ticker)] = weight;
    }
    return Portfolio::normalized(std::move(w));
}

} // namespace

RngSeed experiment_seed(std::uint64_t master, std::uint64_t experiment_id) {
    return RngSeed{master, experiment_id};
}

// ---------------------------------------------------------------------------
// table1

ExperimentOutput run_table1(const Table1Params& p) {
    if (p.realizations < 1 || p.alphas.empty()) {
        throw std::invalid_argument("run_table1: need alphas and realizations >= 1");
    }
    nlohmann::json params = {{"alphas", p.alphas},
                             {"realizations", p.realizations},
                             {"n", p.n},
                             {"tol", p.tol},
                             {"seed", p.master_seed}};
    RngSeed base = experiment_seed(p.master_seed, kIdTable1);
    const ScalarWithCash market{};
    const std::size_t A = p.alphas.size();
    const std::size_t Rn = p.realizations;
    std::vector<double> ord(A * Rn);
    std::vector<double> rel(A * Rn);

    parallel_for(A * Rn, [&](std::size_t idx) {
        double alpha = p.alphas[idx / Rn];
        ReturnsMatrix sample = gen_scalar_bs(market, p.n, base.child(idx));
        auto u = UtilityFunction::power(alpha);
        ord[idx] = bisect_two_asset(u, sample, Objective::ordinary, p.tol);
        rel[idx] = bisect_two_asset(u, sample, Objective::relative, p.tol);
    });

    ExperimentOutput out;
    out.table.experiment = "table1";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"alpha", "ordinary", "relative"};
    nlohmann::json ord_avgs = nlohmann::json::array();
    nlohmann::json rel_avgs = nlohmann::json::array();
    for (std::size_t a = 0; a < A; ++a) {
        double so = 0.0;
        double sr = 0.0;
        for (std::size_t r = 0; r < Rn; ++r) {
            so += ord[a * Rn + r];
            sr += rel[a * Rn + r];
            out.records.push_back({{"alpha", p.alphas[a]},
                                   {"realization", r},
                                   {"ordinary", ord[a * Rn + r]},
                                   {"relative", rel[a * Rn + r]}});
        }
        so /= static_cast<double>(Rn);
        sr /= static_cast<double>(Rn);
        out.table.rows.push_back({fmt_double(p.alphas[a], 6), fmt_double(so, 6),
                                  fmt_double(sr, 6)});
        ord_avgs.push_back(so);
        rel_avgs.push_back(sr);
    }
    out.summary = {{"experiment", "table1"},
                   {"params", params},
                   {"alphas", p.alphas},
                   {"ordinary", ord_avgs},
                   {"relative", rel_avgs}};
    return out;
}

// ---------------------------------------------------------------------------
// fig1

namespace {

// Common-random-number evaluator of (U(nu) - U(all-cash)) * 1e4 for the
// two-asset market, on a fixed antithetically mirrored normal sample. The
// per-sample difference cancels almost all Monte-Carlo noise; plain
// independent sampling would need ~1e5 times more rows for the same
// standard error at the scales involved.
class CashDiffEvaluator {
  public:
    CashDiffEvaluator(const ScalarWithCash& market, double alpha, std::size_t pairs,
                      RngSeed seed)
        : alpha_(alpha) {
        const double dlm = market.daily_log_mean();
        const double dls = market.daily_log_std();
        c_.resize(2 * pairs);
        b_.resize(2 * pairs);
        Rng rng(seed);
        double base_sum = 0.0;
        for (std::size_t k = 0; k < pairs; ++k) {
            double z = rng.normal();
            for (int sgn = 0; sgn < 2; ++sgn) {
                double r2 = std::exp(dlm + (sgn == 0 ? dls : -dls) * z);
                double mx = std::max(1.0, r2);
                std::size_t at = 2 * k + static_cast<std::size_t>(sgn);
                c_[at] = 1.0 / mx;
                b_[at] = (r2 - 1.0) / mx;
                base_sum += std::pow(c_[at], alpha_);
            }
        }
        base_mean_ = base_sum / static_cast<double>(c_.size());
    }

    // (U(nu) - U(cash)) * 1e4 on the stored sample.
    [[nodiscard]] double value_x1e4(double nu) const {
        double s = 0.0;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            s += std::pow(c_[k] + b_[k] * nu, alpha_);
        }
        return (s / static_cast<double>(c_.size()) - base_mean_) * 1e4;
    }

  private:
    double alpha_ = 0.0;
    double base_mean_ = 0.0;
    std::vector<double> c_;
    std::vector<double> b_;
};

// Reference optimum of the true relative utility: bisection on the
// derivative of an antithetically mirrored sample. The sample size is fixed
// independently of the per-portfolio evaluation budget because the
// objective is extremely flat near its maximum.
double reference_optimum(const ScalarWithCash& market, double alpha, std::size_t pairs,
                         RngSeed seed, double tol) {
    const double dlm = market.daily_log_mean();
    const double dls = market.daily_log_std();
    std::vector<double> c(2 * pairs);
    std::vector<double> b(2 * pairs);
    Rng rng(seed);
    for (std::size_t k = 0; k < pairs; ++k) {
        double z = rng.normal();
        for (int sgn = 0; sgn < 2; ++sgn) {
            double r2 = std::exp(dlm + (sgn == 0 ? dls : -dls) * z);
            double mx = std::max(1.0, r2);
            std::size_t at = 2 * k + static_cast<std::size_t>(sgn);
            c[at] = 1.0 / mx;
            b[at] = (r2 - 1.0) / mx;
        }
    }
    auto deriv = [&](double nu) {
        double s = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            s += std::pow(c[k] + b[k] * nu, alpha - 1.0) * b[k];
        }
        return alpha * s / static_cast<double>(c.size());
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

} // namespace

ExperimentOutput run_fig1(const Fig1Params& p) {
    if (p.realizations < 1 || p.n_list.empty() || p.n_true < 2) {
        throw std::invalid_argument("run_fig1: need n_list, realizations >= 1, n_true >= 2");
    }
    nlohmann::json params = {{"n_list", p.n_list},
                             {"realizations", p.realizations},
                             {"alpha", p.alpha},
                             {"n_true", p.n_true},
                             {"tol", p.tol},
                             {"seed", p.master_seed}};
    RngSeed base = experiment_seed(p.master_seed, kIdFig1);
    const ScalarWithCash market{};
    const auto u = UtilityFunction::power(p.alpha);

    constexpr std::uint64_t kAuxOffset = 1u << 20;
    constexpr std::size_t kReferencePairs = 2000000;
    CashDiffEvaluator diff(market, p.alpha, p.n_true / 2, base.child(kAuxOffset));
    double nu_star =
        reference_optimum(market, p.alpha, kReferencePairs, base.child(kAuxOffset + 1), p.tol);
    double value_star = diff.value_x1e4(nu_star);

    const std::size_t N = p.n_list.size();
    const std::size_t Rn = p.realizations;
    std::vector<double> nu_hat(N * Rn);
    parallel_for(N * Rn, [&](std::size_t idx) {
        std::size_t n = p.n_list[idx / Rn];
        ReturnsMatrix sample = gen_scalar_bs(market, n, base.child(idx));
        nu_hat[idx] = bisect_two_asset(u, sample, Objective::relative, p.tol);
    });

    ExperimentOutput out;
    out.table.experiment = "fig1";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"n", "mean_weight", "fraction_at_extremes", "mean_diff_x1e4"};
    nlohmann::json per_n = nlohmann::json::array();
    for (std::size_t ni = 0; ni < N; ++ni) {
        double mean_nu = 0.0;
        double mean_diff = 0.0;
        std::size_t extremes = 0;
        for (std::size_t r = 0; r < Rn; ++r) {
            double nu = nu_hat[ni * Rn + r];
            double dv = diff.value_x1e4(nu);
            mean_nu += nu;
            mean_diff += dv;
            if (nu == 0.0 || nu == 1.0) {
                ++extremes;
            }
            out.records.push_back({{"n", p.n_list[ni]},
                                   {"realization", r},
                                   {"weight", nu},
                                   {"true_diff_x1e4", dv}});
        }
        mean_nu /= static_cast<double>(Rn);
        mean_diff /= static_cast<double>(Rn);
        double frac = static_cast<double>(extremes) / static_cast<double>(Rn);
        out.table.rows.push_back({std::to_string(p.n_list[ni]), fmt_double(mean_nu, 6),
                                  fmt_double(frac, 6), fmt_double(mean_diff, 6)});
        per_n.push_back({{"n", p.n_list[ni]},
                         {"mean_weight", mean_nu},
                         {"fraction_at_extremes", frac},
                         {"mean_diff_x1e4", mean_diff}});
    }
    out.summary = {{"experiment", "fig1"},
                   {"params", params},
                   {"reference_weight", nu_star},
                   {"reference_diff_x1e4", value_star},
                   {"per_n", per_n}};
    return out;
}

// ---------------------------------------------------------------------------
// nyse-log

ExperimentOutput run_nyse_log(const NyseLogParams& p) {
    if (p.runs < 1) {
        throw std::invalid_argument("run_nyse_log: runs must be >= 1");
    }
    nlohmann::json params = {{"data", p.data_path},
                             {"runs", p.runs},
                             {"eta_max", p.gdseg.eta_max},
                             {"n_attempts", p.gdseg.n_attempts},
                             {"threshold", p.gdseg.threshold},
                             {"seed", p.master_seed}};
    RngSeed base = experiment_seed(p.master_seed, kIdNyseLog);
    ReturnsMatrix R = load_dataset(p.data_path, p.tickers_path);
    const std::size_t d = R.cols();
    const auto u = UtilityFunction::logarithmic();

    std::vector<std::vector<double>> weights(p.runs);
    std::vector<double> objectives(p.runs);
    std::vector<std::size_t> attempts(p.runs);
    parallel_for(p.runs, [&](std::size_t run) {
        GdsegConfig cfg = p.gdseg;
        cfg.seed = base.child(run);
        auto [port, trace] = gdseg(R, u, Objective::ordinary, cfg);
        weights[run] = prune_and_renormalize(port).weights();
        objectives[run] = trace.objective_history.back().second;
        attempts[run] = trace.attempts;
    });

    std::vector<double> w_min(d, 1.0);
    std::vector<double> w_max(d, 0.0);
    std::vector<double> w_mean(d, 0.0);
    for (std::size_t run = 0; run < p.runs; ++run) {
        for (std::size_t i = 0; i < d; ++i) {
            double w = weights[run][i];
            w_min[i] = std::min(w_min[i], w);
            w_max[i] = std::max(w_max[i], w);
            w_mean[i] += w;
        }
    }
    for (double& w : w_mean) {
        w /= static_cast<double>(p.runs);
    }

    std::size_t best = 0;
    double attempts_mean = 0.0;
    for (std::size_t run = 0; run < p.runs; ++run) {
        if (objectives[run] > objectives[best]) {
            best = run;
        }
        attempts_mean += static_cast<double>(attempts[run]);
    }
    attempts_mean /= static_cast<double>(p.runs);
    Portfolio final_port{std::vector<double>(weights[best])};
    double wealth = accumulated_wealth(final_port, R);

    ExperimentOutput out;
    out.table.experiment = "nyse-log";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"stock", "min_weight", "max_weight", "mean_weight"};
    nlohmann::json survivors = nlohmann::json::array();
    for (std::size_t i = 0; i < d; ++i) {
        if (w_max[i] == 0.0) {
            continue;
        }
        std::string name = R.has_labels() ? R.labels()[i] : "asset" + std::to_string(i);
        out.table.rows.push_back({name, fmt_double(w_min[i], 6), fmt_double(w_max[i], 6),
                                  fmt_double(w_mean[i], 6)});
        survivors.push_back(name);
    }
    for (std::size_t run = 0; run < p.runs; ++run) {
        out.records.push_back(
            {{"run", run},
             {"objective", objectives[run]},
             {"attempts", attempts[run]},
             {"weights", weights_json(Portfolio(std::vector<double>(weights[run])),
                                      R.labels())}});
    }
    out.summary = {{"experiment", "nyse-log"},
                   {"params", params},
                   {"survivors", survivors},
                   {"wealth", wealth},
                   {"annual_return", annual_return(wealth, R.rows())},
                   {"annual_volatility", annual_volatility(final_port, R)},
                   {"best_objective", objectives[best]},
                   {"mean_attempts", attempts_mean}};
    return out;
}

// ---------------------------------------------------------------------------
// table4

ExperimentOutput run_table4(const Table4Params& p) {
    if (p.k < 1 || p.alphas.empty()) {
        throw std::invalid_argument("run_table4: need alphas and k >= 1");
    }
    nlohmann::json params = {{"data", p.data_path},
                             {"alphas", p.alphas},
                             {"k", p.k},
                             {"eta_max", p.gdseg.eta_max},
                             {"n_attempts", p.gdseg.n_attempts},
                             {"threshold", p.gdseg.threshold},
                             {"seed", p.master_seed}};
    RngSeed base = experiment_seed(p.master_seed, kIdTable4);
    ReturnsMatrix R = load_dataset(p.data_path, p.tickers_path);

    ExperimentOutput out;
    out.table.experiment = "table4";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"alpha",         "objective", "weights",
                         "wealth",        "annual_return", "annual_volatility"};
    std::size_t idx = 0;
    for (double alpha : p.alphas) {
        for (Objective obj : {Objective::ordinary, Objective::relative}) {
            GdsegConfig cfg = p.gdseg;
            cfg.seed = base.child(idx++);
            Portfolio port =
                best_of_k_gdseg(R, UtilityFunction::power(alpha), obj, cfg, p.k);
            double wealth = accumulated_wealth(port, R);
            const char* obj_name = obj == Objective::ordinary ? "ordinary" : "relative";
            out.table.rows.push_back({fmt_double(alpha, 6), obj_name,
                                      weights_field(port, R.labels()),
                                      fmt_double(wealth, 6),
                                      fmt_double(annual_return(wealth, R.rows()), 6),
                                      fmt_double(annual_volatility(port, R), 6)});
            out.records.push_back({{"alpha", alpha},
                                   {"objective", obj_name},
                                   {"weights", weights_json(port, R.labels())},
                                   {"wealth", wealth},
                                   {"annual_return", annual_return(wealth, R.rows())},
                                   {"annual_volatility", annual_volatility(port, R)}});
        }
    }
    out.summary = {{"experiment", "table4"}, {"params", params}, {"rows", out.records}};
    return out;
}

// ---------------------------------------------------------------------------
// table5

namespace {

// Fitted multivariate model plus column labels, from a dataset or from a
// cached model file.
std::pair<MarketSpec, std::vector<std::string>>
resolve_multi_model(const std::string& data_path, const std::string& tickers_path,
                    const std::optional<std::string>& moments_file) {
    if (moments_file) {
        if (!std::filesystem::exists(*moments_file)) {
            throw DatasetMissing(*moments_file);
        }
        std::ifstream in(*moments_file);
        nlohmann::json j = nlohmann::json::parse(in);
        MarketSpec spec = market_spec_from_json(j);
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = j.at("labels").get<std::vector<std::string>>();
        }
        return {std::move(spec), std::move(labels)};
    }
    ReturnsMatrix R = load_dataset(data_path, tickers_path);
    auto [mean, cov] = estimate_log_moments(R);
    return {MarketSpec{MultiAsset{std::move(mean), std::move(cov)}}, R.labels()};
}

} // namespace

ExperimentOutput run_table5(const Table5Params& p) {
    if (p.paths < 2) {
        throw std::invalid_argument("run_table5: paths must be >= 2");
    }
    nlohmann::json params = {{"data", p.data_path},
                             {"paths", p.paths},
                             {"core_portfolios_only", p.core_portfolios_only},
                             {"seed", p.master_seed}};
    if (p.moments_file) {
        params["moments_file"] = *p.moments_file;
    }
    RngSeed base = experiment_seed(p.master_seed, kIdTable5);
    auto [spec, labels] = resolve_multi_model(p.data_path, p.tickers_path, p.moments_file);
    const std::size_t d = market_dim(spec);
    if (labels.empty()) {
        throw std::invalid_argument("run_table5: column labels are required to build portfolios");
    }

    std::vector<std::pair<std::string, Portfolio>> rows;
    rows.emplace_back("uniform", Portfolio::uniform(d));
    for (const auto& nw : reference_portfolios()) {
        rows.emplace_back(nw.name, build_named(nw, labels, d));
        if (p.core_portfolios_only && rows.size() == 2) {
            break; // uniform + log-optimal
        }
    }

    ExperimentOutput out;
    out.table.experiment = "table5";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"portfolio", "mean", "median", "std", "p05", "p95"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [name, port] = rows[i];
        std::vector<double> wealth = sample_annual_wealth(spec, port, p.paths, base.child(i));
        SampleSummary s = summarize(wealth);
        out.table.rows.push_back({name, fmt_double(s.mean, 6), fmt_double(s.median, 6),
                                  fmt_double(s.stddev, 6), fmt_double(s.p05, 6),
                                  fmt_double(s.p95, 6)});
        out.records.push_back({{"portfolio", name},
                               {"weights", weights_json(port, labels)},
                               {"mean", s.mean},
                               {"median", s.median},
                               {"std", s.stddev},
                               {"p05", s.p05},
                               {"p95", s.p95}});
    }
    out.summary = {{"experiment", "table5"}, {"params", params}, {"rows", out.records}};
    return out;
}

// ---------------------------------------------------------------------------
// fig2

ExperimentOutput run_fig2(const Fig2Params& p) {
    if (p.realizations < 1 || p.n < 1 || p.k < 1 || p.n_true < 1) {
        throw std::invalid_argument("run_fig2: invalid parameters");
    }
    nlohmann::json params = {{"data", p.data_path},
                             {"realizations", p.realizations},
                             {"alpha", p.alpha},
                             {"n", p.n},
                             {"k", p.k},
                             {"n_true", p.n_true},
                             {"seed", p.master_seed}};
    if (p.moments_file) {
        params["moments_file"] = *p.moments_file;
    }
    RngSeed base = experiment_seed(p.master_seed, kIdFig2);
    auto [spec, labels] = resolve_multi_model(p.data_path, p.tickers_path, p.moments_file);
    const std::size_t d = market_dim(spec);
    const auto u = UtilityFunction::power(p.alpha);

    constexpr std::uint64_t kAuxOffset = 1u << 20;
    double u_uniform =
        mc_true_utility(u, Portfolio::uniform(d), spec, p.n_true, base.child(kAuxOffset));

    std::vector<double> avg_weight(d, 0.0);
    std::vector<double> raw(p.realizations);
    std::vector<double> transformed(p.realizations);
    ExperimentOutput out;
    for (std::size_t r = 0; r < p.realizations; ++r) {
        ReturnsMatrix sample = gen_market(spec, p.n, base.child(3 * r));
        GdsegConfig cfg = p.gdseg;
        cfg.seed = base.child(3 * r + 1);
        Portfolio port = best_of_k_gdseg(sample, u, Objective::relative, cfg, p.k);
        double u_true = mc_true_utility(u, port, spec, p.n_true, base.child(3 * r + 2));
        raw[r] = u_true;
        transformed[r] = (u_true - u_uniform) * 1e4;
        std::size_t support = 0;
        for (std::size_t i = 0; i < d; ++i) {
            avg_weight[i] += port[i];
            if (port[i] > 0.0) {
                ++support;
            }
        }
        out.records.push_back({{"realization", r},
                               {"weights", weights_json(port, labels)},
                               {"support_size", support},
                               {"true_utility", u_true},
                               {"true_diff_x1e4", transformed[r]}});
    }
    for (double& w : avg_weight) {
        w /= static_cast<double>(p.realizations);
    }

    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return avg_weight[a] > avg_weight[b]; });
    nlohmann::json top = nlohmann::json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(5, d); ++i) {
        std::string name =
            labels.empty() ? "asset" + std::to_string(order[i]) : labels[order[i]];
        top.push_back({{"stock", name}, {"avg_weight", avg_weight[order[i]]}});
    }

    out.table.experiment = "fig2";
    out.table.seed = p.master_seed;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"stock", "avg_weight"};
    for (std::size_t i = 0; i < d; ++i) {
        std::string name = labels.empty() ? "asset" + std::to_string(i) : labels[i];
        out.table.rows.push_back({name, fmt_double(avg_weight[i], 6)});
    }
    nlohmann::json summary_stats;
    if (p.realizations >= 2) {
        SampleSummary rs = summarize(raw);
        SampleSummary ts = summarize(transformed);
        summary_stats = {{"true_utility_mean", rs.mean},
                         {"true_utility_median", rs.median},
                         {"true_diff_x1e4_mean", ts.mean},
                         {"true_diff_x1e4_median", ts.median}};
    }
    out.summary = {{"experiment", "fig2"},
                   {"params", params},
                   {"uniform_true_utility", u_uniform},
                   {"top_stocks", top},
                   {"stats", summary_stats}};
    return out;
}

// ---------------------------------------------------------------------------
// bound-report

nlohmann::json bound_report_to_json(const BoundReport& r) {
    nlohmann::json j = {{"deviation", r.deviation},
                        {"rademacher_bound", r.rademacher_bound},
                        {"estimation_error_bound", r.estimation_error_bound},
                        {"empirical_gap_bound", r.empirical_gap_bound},
                        {"branch", r.branch},
                        {"delta", r.delta},
                        {"confidence", 1.0 - r.delta}};
    if (r.seg_bound) {
        j["seg_bound"] = *r.seg_bound;
        j["seg_confidence"] = 1.0 - 3.0 * r.delta;
    }
    return j;
}

ExperimentOutput run_bound_report(const BoundReportParams& p) {
    BoundInputs in;
    in.n = p.n;
    in.d = p.d;
    in.alpha = p.alpha;
    in.delta = p.delta;
    in.L_n = p.L_n;
    in.m = p.m;
    BoundReport r = make_bound_report(in);

    nlohmann::json params = {{"n", p.n}, {"d", p.d}, {"alpha", p.alpha}, {"delta", p.delta}};
    if (p.L_n) {
        params["L_n"] = *p.L_n;
    }
    if (p.m) {
        params["m"] = *p.m;
    }
    ExperimentOutput out;
    out.table.experiment = "bound-report";
    out.table.seed = 0;
    out.table.spec_hash = hash_params(params);
    out.table.columns = {"quantity", "value"};
    out.table.rows.push_back({"deviation", fmt_double(r.deviation, 10)});
    out.table.rows.push_back({"rademacher_bound", fmt_double(r.rademacher_bound, 10)});
    out.table.rows.push_back(
        {"estimation_error_bound", fmt_double(r.estimation_error_bound, 10)});
    out.table.rows.push_back({"empirical_gap_bound", fmt_double(r.empirical_gap_bound, 10)});
    if (r.seg_bound) {
        out.table.rows.push_back({"seg_bound", fmt_double(*r.seg_bound, 10)});
    }
    out.table.rows.push_back({"branch", r.branch});
    out.summary = bound_report_to_json(r);
    out.summary["experiment"] = "bound-report";
    out.summary["params"] = params;
    out.records.push_back(out.summary);
    return out;
}

} // namespace relutil
