#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relutil/experiments.hpp"
#include "relutil/stats.hpp"

namespace {

using nlohmann::json;

// Reads the optional --spec parameter-override file.
json load_spec(const std::string& path) {
    if (path.empty()) {
        return json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open spec file: " + path);
    }
    json j = json::parse(in, nullptr, true, true);
    if (!j.is_object()) {
        throw std::invalid_argument("spec file must hold a JSON object: " + path);
    }
    return j;
}

template <class T>
void maybe(const json& spec, const char* key, T& into) {
    if (spec.contains(key)) {
        into = spec.at(key).get<T>();
    }
}

void apply_gdseg(const json& spec, relutil::GdsegConfig& cfg) {
    maybe(spec, "eta_max", cfg.eta_max);
    maybe(spec, "n_attempts", cfg.n_attempts);
    maybe(spec, "threshold", cfg.threshold);
}

struct CommonArgs {
    std::string spec_path;
    std::string out_dir = "out";
    std::string data_path;
    std::string tickers_path;
    std::uint64_t seed = 1;
    bool seed_given = false;
    bool fast = false;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--spec", a.spec_path, "JSON file with parameter overrides");
    sub->add_option("--out", a.out_dir, "output directory")->capture_default_str();
    sub->add_option("--data", a.data_path, "returns matrix file");
    sub->add_option("--tickers", a.tickers_path, "column labels file");
    sub->add_flag("--fast", a.fast, "desk-scale presets (realizations=20, N_true=1e5)");
    sub->add_option("--seed", a.seed, "master seed")
        ->each([&a](const std::string&) { a.seed_given = true; });
}

void emit(const relutil::ExperimentOutput& out, const std::string& out_dir,
          const std::string& name, std::chrono::steady_clock::time_point start) {
    std::filesystem::create_directories(out_dir);
    std::filesystem::path base = std::filesystem::path(out_dir) / name;
    relutil::write_csv(out.table, base.string() + ".csv");
    relutil::write_jsonl(out.records, base.string() + ".jsonl");
    std::cout << out.summary.dump(2) << "\n";
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    // Runtime goes to the terminal only, never into the output files, so
    // reruns stay byte-identical.
    std::printf("wrote %s.csv and %s.jsonl\n", base.string().c_str(), base.string().c_str());
    std::printf("runtime_seconds: %.1f\n", secs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"portfolio selection from return samples: experiments and bounds"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* c_table1 = app.add_subcommand("table1", "two-asset optimal weights per alpha");
    CLI::App* c_fig1 = app.add_subcommand("fig1", "two-asset weight spread per sample size");
    CLI::App* c_nyse = app.add_subcommand("nyse-log", "log-utility solver stability runs");
    CLI::App* c_table4 = app.add_subcommand("table4", "power-utility portfolios per alpha");
    CLI::App* c_table5 = app.add_subcommand("table5", "annual-wealth statistics of reference portfolios");
    CLI::App* c_fig2 = app.add_subcommand("fig2", "average weights over simulated realizations");
    CLI::App* c_bound = app.add_subcommand("bound-report", "error-bound calculus at one parameter point");
    CLI::App* c_sim = app.add_subcommand("simulate", "generate a returns matrix from a market model");
    CLI::App* c_opt = app.add_subcommand("optimize", "best-of-k solver run on a returns file");
    for (CLI::App* sub : {c_table1, c_fig1, c_nyse, c_table4, c_table5, c_fig2, c_bound,
                          c_sim, c_opt}) {
        add_common(sub, args);
    }

    try {
        app.parse(argc, argv);
        auto start = std::chrono::steady_clock::now();
        json spec = load_spec(args.spec_path);

        if (c_table1->parsed()) {
            relutil::Table1Params p;
            maybe(spec, "alphas", p.alphas);
            maybe(spec, "realizations", p.realizations);
            maybe(spec, "n", p.n);
            maybe(spec, "tol", p.tol);
            maybe(spec, "seed", p.master_seed);
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) p.realizations = 20;
            emit(relutil::run_table1(p), args.out_dir, "table1", start);
        } else if (c_fig1->parsed()) {
            relutil::Fig1Params p;
            maybe(spec, "n_list", p.n_list);
            maybe(spec, "realizations", p.realizations);
            maybe(spec, "alpha", p.alpha);
            maybe(spec, "n_true", p.n_true);
            maybe(spec, "tol", p.tol);
            maybe(spec, "seed", p.master_seed);
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) {
                p.realizations = 20;
                p.n_true = 100000;
            }
            emit(relutil::run_fig1(p), args.out_dir, "fig1", start);
        } else if (c_nyse->parsed()) {
            relutil::NyseLogParams p;
            maybe(spec, "data", p.data_path);
            maybe(spec, "tickers", p.tickers_path);
            maybe(spec, "runs", p.runs);
            maybe(spec, "seed", p.master_seed);
            apply_gdseg(spec, p.gdseg);
            if (!args.data_path.empty()) p.data_path = args.data_path;
            if (!args.tickers_path.empty()) p.tickers_path = args.tickers_path;
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) p.runs = 20;
            emit(relutil::run_nyse_log(p), args.out_dir, "nyse-log", start);
        } else if (c_table4->parsed()) {
            relutil::Table4Params p;
            maybe(spec, "data", p.data_path);
            maybe(spec, "tickers", p.tickers_path);
            maybe(spec, "alphas", p.alphas);
            maybe(spec, "k", p.k);
            maybe(spec, "seed", p.master_seed);
            apply_gdseg(spec, p.gdseg);
            if (!args.data_path.empty()) p.data_path = args.data_path;
            if (!args.tickers_path.empty()) p.tickers_path = args.tickers_path;
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) p.k = 3;
            emit(relutil::run_table4(p), args.out_dir, "table4", start);
        } else if (c_table5->parsed()) {
            relutil::Table5Params p;
            maybe(spec, "data", p.data_path);
            maybe(spec, "tickers", p.tickers_path);
            maybe(spec, "paths", p.paths);
            maybe(spec, "core_portfolios_only", p.core_portfolios_only);
            maybe(spec, "seed", p.master_seed);
            if (spec.contains("moments_file")) {
                p.moments_file = spec.at("moments_file").get<std::string>();
            }
            if (!args.data_path.empty()) p.data_path = args.data_path;
            if (!args.tickers_path.empty()) p.tickers_path = args.tickers_path;
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) p.paths = 100000;
            emit(relutil::run_table5(p), args.out_dir, "table5", start);
        } else if (c_fig2->parsed()) {
            relutil::Fig2Params p;
            maybe(spec, "data", p.data_path);
            maybe(spec, "tickers", p.tickers_path);
            maybe(spec, "realizations", p.realizations);
            maybe(spec, "alpha", p.alpha);
            maybe(spec, "n", p.n);
            maybe(spec, "k", p.k);
            maybe(spec, "n_true", p.n_true);
            maybe(spec, "seed", p.master_seed);
            apply_gdseg(spec, p.gdseg);
            if (spec.contains("moments_file")) {
                p.moments_file = spec.at("moments_file").get<std::string>();
            }
            if (!args.data_path.empty()) p.data_path = args.data_path;
            if (!args.tickers_path.empty()) p.tickers_path = args.tickers_path;
            if (args.seed_given) p.master_seed = args.seed;
            if (args.fast) {
                p.realizations = 20;
                p.n_true = 100000;
            }
            emit(relutil::run_fig2(p), args.out_dir, "fig2", start);
        } else if (c_bound->parsed()) {
            relutil::BoundReportParams p;
            maybe(spec, "n", p.n);
            maybe(spec, "d", p.d);
            maybe(spec, "alpha", p.alpha);
            maybe(spec, "delta", p.delta);
            if (spec.contains("L_n")) p.L_n = spec.at("L_n").get<double>();
            if (spec.contains("m")) p.m = spec.at("m").get<std::size_t>();
            emit(relutil::run_bound_report(p), args.out_dir, "bound-report", start);
        } else if (c_sim->parsed()) {
            relutil::MarketSpec model = relutil::ScalarWithCash{};
            if (spec.contains("model")) {
                model = relutil::market_spec_from_json(spec);
            }
            std::size_t n = 252;
            maybe(spec, "n", n);
            std::uint64_t seed = 1;
            maybe(spec, "seed", seed);
            if (args.seed_given) seed = args.seed;
            relutil::ReturnsMatrix R =
                relutil::gen_market(model, n, relutil::experiment_seed(seed, 8));
            std::filesystem::create_directories(args.out_dir);
            std::filesystem::path path = std::filesystem::path(args.out_dir) / "sample.txt";
            relutil::save_returns(R, path);
            std::cout << json{{"rows", R.rows()},
                              {"cols", R.cols()},
                              {"path", path.string()},
                              {"model", relutil::market_spec_to_json(model)}}
                             .dump(2)
                      << "\n";
        } else if (c_opt->parsed()) {
            if (args.data_path.empty()) {
                maybe(spec, "data", args.data_path);
            }
            if (args.tickers_path.empty()) {
                maybe(spec, "tickers", args.tickers_path);
            }
            if (args.data_path.empty()) {
                throw std::invalid_argument("optimize needs --data (or \"data\" in --spec)");
            }
            if (!std::filesystem::exists(args.data_path)) {
                throw relutil::DatasetMissing(args.data_path);
            }
            relutil::ReturnsMatrix R = relutil::load_returns(args.data_path);
            if (!args.tickers_path.empty() && std::filesystem::exists(args.tickers_path)) {
                R.set_labels(relutil::load_tickers(args.tickers_path));
            }
            std::string utility = "power";
            double alpha = 0.2;
            std::string objective = "relative";
            std::size_t k = 10;
            std::uint64_t seed = 1;
            maybe(spec, "utility", utility);
            maybe(spec, "alpha", alpha);
            maybe(spec, "objective", objective);
            maybe(spec, "k", k);
            maybe(spec, "seed", seed);
            if (args.seed_given) seed = args.seed;
            if (args.fast) k = 3;
            relutil::UtilityFunction u = utility == "log"
                                             ? relutil::UtilityFunction::logarithmic()
                                             : relutil::UtilityFunction::power(alpha);
            relutil::Objective obj;
            if (objective == "relative") {
                obj = relutil::Objective::relative;
            } else if (objective == "ordinary") {
                obj = relutil::Objective::ordinary;
            } else {
                throw std::invalid_argument("objective must be relative or ordinary");
            }
            relutil::GdsegConfig cfg;
            apply_gdseg(spec, cfg);
            cfg.seed = relutil::experiment_seed(seed, 9);
            relutil::Portfolio port = relutil::best_of_k_gdseg(R, u, obj, cfg, k);
            double wealth = relutil::accumulated_wealth(port, R);
            relutil::ExperimentOutput out;
            out.table.experiment = "optimize";
            out.table.seed = seed;
            out.table.spec_hash = relutil::git_blob_sha1(spec.dump());
            out.table.columns = {"asset", "weight"};
            for (std::size_t i = 0; i < port.size(); ++i) {
                if (port[i] == 0.0) continue;
                std::string name = R.has_labels() ? R.labels()[i]
                                                  : "asset" + std::to_string(i);
                out.table.rows.push_back({name, relutil::fmt_double(port[i], 6)});
            }
            out.summary = {{"experiment", "optimize"},
                           {"utility", utility},
                           {"alpha", alpha},
                           {"objective", objective},
                           {"k", k},
                           {"empirical_utility", relutil::empirical_utility(u, port, R, obj)},
                           {"wealth", wealth},
                           {"annual_return", relutil::annual_return(wealth, R.rows())},
                           {"annual_volatility", relutil::annual_volatility(port, R)}};
            out.records.push_back(out.summary);
            emit(out, args.out_dir, "optimize", start);
        }
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const relutil::DatasetMissing& e) {
        std::cout << "skipped: dataset absent (" << e.missing_path << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
