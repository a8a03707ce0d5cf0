#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiot/data_io.hpp"
#include "tiot/entropic.hpp"
#include "tiot/errors.hpp"
#include "tiot/exact.hpp"
#include "tiot/experiments.hpp"
#include "tiot/time_series.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct SolverFlags {
    double eps = 0.1;
    double p = 2.0;
    double tol = 0.005;
    int freq = 10;
    int max_iters = 100000;
    std::string stepsize = "adaptive-inverse";
    bool log_domain = false;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--eps", f.eps, "Entropic regularization strength");
    cmd->add_option("--p", f.p, "Ground-cost order p");
    cmd->add_option("--tol", f.tol, "Marginal L1 stopping tolerance");
    cmd->add_option("--freq", f.freq, "Iterations between w updates / checks");
    cmd->add_option("--max-iters", f.max_iters, "Iteration cap");
    cmd->add_option("--stepsize", f.stepsize, "w stepsize rule")
        ->check(CLI::IsMember({"theoretical", "adaptive-proportional", "adaptive-inverse"}));
    cmd->add_flag("--log-domain", f.log_domain, "Force log-domain updates");
}

tiot::HbcdConfig to_config(const SolverFlags& f) {
    tiot::HbcdConfig cfg;
    cfg.epsilon = f.eps;
    cfg.marginal_tol = f.tol;
    cfg.freq = f.freq;
    cfg.max_iters = f.max_iters;
    cfg.log_domain = f.log_domain;
    if (f.stepsize == "theoretical")
        cfg.stepsize = tiot::StepsizeRule::Theoretical;
    else if (f.stepsize == "adaptive-proportional")
        cfg.stepsize = tiot::StepsizeRule::AdaptiveProportional;
    else
        cfg.stepsize = tiot::StepsizeRule::AdaptiveInverse;
    return cfg;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
            throw tiot::InvalidInput(std::string(what) + ": bad number '" + tok + "'");
        out.push_back(x);
    }
    if (out.empty()) throw tiot::InvalidInput(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    for (double x : parse_double_list(s, what)) out.push_back(int(std::llround(x)));
    return out;
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// Series input for pairwise commands: UCR-style .tsv (first data row; leading
// label unless --no-label) or plain text with one value per line.
tiot::TimeSeries load_series(const std::string& path, bool no_label,
                             const std::string& times_csv, bool raw) {
    std::ifstream in(path);
    if (!in) throw tiot::ParseError("cannot open " + path);
    std::vector<double> vals;
    const bool tsv = std::filesystem::path(path).extension() == ".tsv";
    if (tsv) {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) break;
        }
        if (line.empty()) throw tiot::ParseError(path + ": no data row");
        std::stringstream ss(line);
        std::string tok;
        bool first = true;
        while (std::getline(ss, tok, '\t')) {
            if (first && !no_label) {
                first = false;
                continue; // label column
            }
            first = false;
            char* end = nullptr;
            const double x = std::strtod(tok.c_str(), &end);
            if (tok.empty() || end != tok.c_str() + tok.size())
                throw tiot::ParseError(path + ": bad value '" + tok + "'");
            vals.push_back(x);
        }
    } else {
        std::string tok;
        while (in >> tok) {
            char* end = nullptr;
            const double x = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size())
                throw tiot::ParseError(path + ": bad value '" + tok + "'");
            vals.push_back(x);
        }
    }
    if (vals.empty()) throw tiot::ParseError(path + ": no values");
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
    tiot::TimeSeries ts = tiot::TimeSeries::univariate(v);
    if (!times_csv.empty()) {
        const auto tl = parse_double_list(times_csv, "timestamps");
        if (tl.size() != vals.size())
            throw tiot::InvalidInput(path + ": " + std::to_string(tl.size()) +
                                     " timestamps for " + std::to_string(vals.size()) +
                                     " values");
        Eigen::VectorXd t =
            Eigen::Map<const Eigen::VectorXd>(tl.data(), Eigen::Index(tl.size()));
        ts = tiot::TimeSeries::univariate(v, t);
    }
    return raw ? ts : tiot::zscore_normalize(ts);
}

struct OutputFlags {
    std::string out;
    std::string format = "json";
    bool no_timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
    cmd->add_option("--out", f.out, "Output path or basename");
    cmd->add_option("--format", f.format, "Report file format")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    cmd->add_flag("--no-timestamp", f.no_timestamp,
                  "Omit the timestamp (deterministic output bytes)");
}

// Writes the report per --out/--format and returns the written paths.
std::vector<std::string> write_report(tiot::Report& rep, const OutputFlags& of) {
    rep.timestamp = of.no_timestamp ? "" : tiot::utc_timestamp();
    std::vector<std::string> paths;
    const std::string ext = std::filesystem::path(of.out).extension().string();
    if (ext == ".json") {
        tiot::write_report_json(rep, of.out);
        paths.push_back(of.out);
        return paths;
    }
    if (ext == ".csv") {
        tiot::write_report_csv(rep, of.out);
        paths.push_back(of.out);
        return paths;
    }
    const std::string base = of.out.empty() ? tiot::report_basename(rep) : of.out;
    if (of.format == "json" || of.format == "both") {
        tiot::write_report_json(rep, base + ".json");
        paths.push_back(base + ".json");
    }
    if (of.format == "csv" || of.format == "both") {
        tiot::write_report_csv(rep, base + ".csv");
        paths.push_back(base + ".csv");
    }
    return paths;
}

void echo(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int loocv_errors(const tiot::MatrixXd& d, const std::vector<tiot::TimeSeries>& train) {
    int wrong = 0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        Eigen::Index best = -1;
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            if (j == i) continue;
            if (best < 0 || d(i, j) < d(i, best)) best = j;
        }
        if (*train[size_t(best)].label() != *train[size_t(i)].label()) ++wrong;
    }
    return wrong;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-integrated optimal transport distances for time series"};
    app.require_subcommand(1);

    // ---- dist ------------------------------------------------------------
    auto* dist = app.add_subcommand("dist", "Distance between two series");
    std::string dist_a, dist_b, dist_times_a, dist_times_b;
    bool dist_exact = false, dist_raw = false, dist_no_label = false;
    SolverFlags dist_sf;
    OutputFlags dist_of;
    std::uint64_t dist_seed = 0;
    dist->add_option("a", dist_a, "First series file")->required();
    dist->add_option("b", dist_b, "Second series file")->required();
    dist->add_flag("--exact", dist_exact, "Exact solver (bisection + simplex)");
    dist->add_flag("--raw", dist_raw, "Skip z-score normalization");
    dist->add_flag("--no-label", dist_no_label, "TSV rows carry no label column");
    dist->add_option("--times-a", dist_times_a, "Comma-separated timestamps for a");
    dist->add_option("--times-b", dist_times_b, "Comma-separated timestamps for b");
    long dist_max_pivots = 0;
    dist->add_option("--max-pivots", dist_max_pivots,
                     "Pivot cap per exact OT solve (0 = automatic)");
    dist->add_option("--seed", dist_seed, "Echoed in the output");
    add_solver_flags(dist, dist_sf);
    add_output_flags(dist, dist_of);

    // ---- align -----------------------------------------------------------
    auto* align = app.add_subcommand("align", "Optimal-plan support for a pair");
    std::string al_a, al_b, al_times_a, al_times_b;
    bool al_exact = false, al_raw = false, al_no_label = false;
    double al_threshold = -1.0;
    SolverFlags al_sf;
    OutputFlags al_of;
    std::uint64_t al_seed = 0;
    align->add_option("a", al_a, "First series file")->required();
    align->add_option("b", al_b, "Second series file")->required();
    align->add_flag("--exact", al_exact, "Exact solver instead of HBCD");
    align->add_flag("--raw", al_raw, "Skip z-score normalization");
    align->add_flag("--no-label", al_no_label, "TSV rows carry no label column");
    align->add_option("--times-a", al_times_a, "Comma-separated timestamps for a");
    align->add_option("--times-b", al_times_b, "Comma-separated timestamps for b");
    align->add_option("--threshold", al_threshold, "Mass cutoff (default 0.5/(m*n))");
    align->add_option("--seed", al_seed, "Echoed in the output");
    add_solver_flags(align, al_sf);
    add_output_flags(align, al_of);

    // ---- knn -------------------------------------------------------------
    auto* knn = app.add_subcommand("knn", "1NN classification on UCR-style TSVs");
    std::string knn_train, knn_test, knn_metric = "etiot", knn_grid, knn_omega_grid;
    double knn_eps = -1.0, knn_omega = -1.0;
    int knn_folds = 3, knn_jobs = 0, knn_limit_train = 0, knn_limit_test = 0;
    bool knn_no_cache = false;
    SolverFlags knn_sf;
    OutputFlags knn_of;
    std::uint64_t knn_seed = 0;
    knn->add_option("--train", knn_train, "Training TSV")->required();
    knn->add_option("--test", knn_test, "Test TSV")->required();
    knn->add_option("--metric", knn_metric, "Distance to use")
        ->check(CLI::IsMember({"etiot", "etaot", "ed"}));
    knn->add_option("--eps", knn_eps, "Fixed epsilon (skips cross-validation)");
    knn->add_option("--grid", knn_grid, "Comma-separated epsilon grid for CV");
    knn->add_option("--omega", knn_omega, "Fixed time-cost weight (etaot)");
    knn->add_option("--omega-grid", knn_omega_grid, "Omega grid for LOOCV (etaot)");
    knn->add_option("--folds", knn_folds, "CV folds");
    knn->add_option("--jobs", knn_jobs, "Worker threads (0 = all cores)");
    knn->add_option("--limit-train", knn_limit_train, "Keep only the first N train rows");
    knn->add_option("--limit-test", knn_limit_test, "Keep only the first N test rows");
    knn->add_flag("--no-cache", knn_no_cache, "Disable the distance cache");
    knn->add_option("--seed", knn_seed, "Fold-shuffle seed, echoed in the output");
    knn->add_option("--tol", knn_sf.tol, "Marginal L1 stopping tolerance");
    knn->add_option("--freq", knn_sf.freq, "Iterations between w updates / checks");
    knn->add_option("--max-iters", knn_sf.max_iters, "Iteration cap");
    knn->add_option("--stepsize", knn_sf.stepsize, "w stepsize rule")
        ->check(CLI::IsMember({"theoretical", "adaptive-proportional", "adaptive-inverse"}));
    add_output_flags(knn, knn_of);

    // ---- lag -------------------------------------------------------------
    auto* lag = app.add_subcommand("lag", "Lagged-window distance profile");
    std::string lag_csv, lag_ws = "0.2,0.5,0.8";
    tiot::LagConfig lag_cfg;
    bool lag_no_exact = false;
    SolverFlags lag_sf;
    OutputFlags lag_of;
    std::uint64_t lag_seed = 0;
    lag->add_option("--csv", lag_csv, "Climate CSV (date,meantemp,...)")->required();
    lag->add_option("--window", lag_cfg.window, "Window length");
    lag->add_option("--max-ell", lag_cfg.max_ell, "Largest lag (0 = all)");
    lag->add_option("--step", lag_cfg.step, "Lag stride");
    lag->add_option("--ws", lag_ws, "Fixed w values for the OT columns");
    lag->add_flag("--no-exact", lag_no_exact, "Skip the exact-distance column");
    lag->add_flag("--etiot", lag_cfg.etiot, "Add an entropic column");
    lag->add_option("--eps", lag_cfg.etiot_eps, "Epsilon for the entropic column");
    lag->add_option("--jobs", lag_cfg.jobs, "Worker threads (0 = all cores)");
    lag->add_option("--seed", lag_seed, "Echoed in the output");
    add_output_flags(lag, lag_of);

    // ---- converge --------------------------------------------------------
    auto* conv = app.add_subcommand("converge", "Entropic-to-exact convergence study");
    int conv_n = 50, conv_seeds = 20;
    std::string conv_eps_list = "1,0.5,0.1,0.05,0.01";
    SolverFlags conv_sf;
    OutputFlags conv_of;
    std::uint64_t conv_seed = 1;
    conv->add_option("--n", conv_n, "Series length");
    conv->add_option("--eps-list", conv_eps_list, "Comma-separated epsilon values");
    conv->add_option("--seeds", conv_seeds, "Number of seeded pairs");
    conv->add_option("--seed", conv_seed, "Base seed");
    add_solver_flags(conv, conv_sf);
    add_output_flags(conv, conv_of);

    // ---- bench -----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Solver runtime comparison");
    tiot::BenchConfig bench_cfg;
    std::string bench_sizes = "10,50,100";
    OutputFlags bench_of;
    bench->add_option("--sizes", bench_sizes, "Comma-separated series lengths");
    bench->add_option("--eps", bench_cfg.epsilon, "Epsilon for the entropic solvers");
    bench->add_option("--reps", bench_cfg.reps, "Repetitions per cell");
    bench->add_option("--lp-cutoff", bench_cfg.lp_cutoff, "Largest n for the plain LP");
    bench->add_option("--ot-cutoff", bench_cfg.exact_ot_cutoff,
                      "Largest n for the simplex column");
    bench->add_option("--timeout", bench_cfg.cell_timeout_sec, "Per-cell budget, seconds");
    bench->add_option("--seed", bench_cfg.seed, "Pair-generation seed");
    add_output_flags(bench, bench_of);

    // ---- gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Write a seeded synthetic bump pair");
    std::uint64_t gen_seed = 1;
    int gen_n = 200;
    bool gen_no_noise = false;
    std::string gen_out_a, gen_out_b;
    gen->add_option("--seed", gen_seed, "Noise seed");
    gen->add_option("--n", gen_n, "Series length");
    gen->add_flag("--no-noise", gen_no_noise, "Noiseless bumps");
    gen->add_option("--out-a", gen_out_a, "Path for the first series")->required();
    gen->add_option("--out-b", gen_out_b, "Path for the second series")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*dist) {
            const auto a = load_series(dist_a, dist_no_label, dist_times_a, dist_raw);
            const auto b = load_series(dist_b, dist_no_label, dist_times_b, dist_raw);
            const auto ma = tiot::lift_to_measure(a), mb = tiot::lift_to_measure(b);
            const auto cp = tiot::build_cost_pair(ma, mb, dist_sf.p);
            ordered_json j;
            j["command"] = "dist";
            if (dist_exact) {
                tiot::OtSimplexOptions oo;
                oo.max_pivots = dist_max_pivots;
                const auto sol = tiot::tiot_exact(cp, ma.weights(), mb.weights(),
                                                  1e-9, oo);
                j["solver"] = "exact";
                j["distance"] = sol.distance;
                j["w"] = sol.w_star;
                j["value"] = sol.value;
                j["iterations"] = sol.ot_solves;
                j["converged"] = true;
            } else {
                const auto cfg = to_config(dist_sf);
                const auto sol =
                    tiot::hbcd_solve(cp, ma.weights(), mb.weights(), cfg);
                j["solver"] = "etiot";
                j["distance"] =
                    std::pow(std::max(sol.transport_value, 0.0), 1.0 / dist_sf.p);
                j["w"] = sol.w;
                j["value"] = sol.transport_value;
                j["iterations"] = sol.iterations;
                j["converged"] = sol.converged;
                j["residual"] = sol.final_residual;
                j["epsilon"] = dist_sf.eps;
                j["log_domain"] = sol.used_log_domain;
            }
            j["p"] = dist_sf.p;
            j["m"] = ma.size();
            j["n"] = mb.size();
            j["seed"] = dist_seed;
            echo(j);
            if (!dist_of.out.empty()) {
                std::ofstream out(dist_of.out);
                out << j.dump(2) << "\n";
            }
            return 0;
        }

        if (*align) {
            const auto a = load_series(al_a, al_no_label, al_times_a, al_raw);
            const auto b = load_series(al_b, al_no_label, al_times_b, al_raw);
            tiot::AlignmentConfig cfg;
            cfg.exact = al_exact;
            cfg.epsilon = al_sf.eps;
            if (al_threshold >= 0.0) cfg.threshold = al_threshold;
            tiot::Report rep = tiot::alignment_export(a, b, cfg);
            rep.dataset = file_stem(al_a) + "_" + file_stem(al_b);
            rep.parameters.emplace_back("seed", std::to_string(al_seed));
            const auto paths = write_report(rep, al_of);
            ordered_json j;
            j["command"] = "align";
            j["rows"] = rep.rows.size();
            j["seed"] = al_seed;
            j["written"] = paths;
            echo(j);
            return 0;
        }

        if (*knn) {
            auto train = tiot::read_ucr_tsv(knn_train).series;
            auto test = tiot::read_ucr_tsv(knn_test).series;
            if (knn_limit_train > 0 && size_t(knn_limit_train) < train.size())
                train.erase(train.begin() + knn_limit_train, train.end());
            if (knn_limit_test > 0 && size_t(knn_limit_test) < test.size())
                test.erase(test.begin() + knn_limit_test, test.end());

            SolverFlags sf = knn_sf;
            auto metric_for = [&](double eps, double omega) -> tiot::MetricFn {
                if (knn_metric == "ed")
                    return [](const tiot::TimeSeries& x, const tiot::TimeSeries& y) {
                        return tiot::euclidean_dist(x, y);
                    };
                if (knn_metric == "etaot")
                    return [eps, omega, sf](const tiot::TimeSeries& x,
                                            const tiot::TimeSeries& y) {
                        const auto r = tiot::etaot_solve(
                            tiot::lift_to_measure(x), tiot::lift_to_measure(y), omega,
                            eps, sf.tol, sf.max_iters);
                        return r.value;
                    };
                tiot::HbcdConfig cfg = to_config(sf);
                cfg.epsilon = eps;
                return [cfg](const tiot::TimeSeries& x, const tiot::TimeSeries& y) {
                    const auto ma = tiot::lift_to_measure(x);
                    const auto mb = tiot::lift_to_measure(y);
                    const auto cp = tiot::build_cost_pair(ma, mb, 2.0);
                    const auto sol =
                        tiot::hbcd_solve(cp, ma.weights(), mb.weights(), cfg);
                    return std::sqrt(std::max(sol.transport_value, 0.0));
                };
            };

            double eps_used = knn_eps, omega_used = knn_omega;
            ordered_json cv_json;
            bool stratified = true;
            if (knn_metric == "etiot" && knn_eps < 0.0) {
                std::vector<double> grid;
                if (!knn_grid.empty())
                    grid = parse_double_list(knn_grid, "--grid");
                else
                    for (int k = 1; k <= 10; ++k) grid.push_back(0.01 * k);
                const auto cv = tiot::cv_epsilon(
                    train, grid, knn_folds, knn_seed,
                    [&](double e) { return metric_for(e, 0.0); }, knn_jobs);
                eps_used = cv.best;
                stratified = cv.stratified;
                cv_json = ordered_json::array();
                for (const auto& [e, err] : cv.mean_error_by_value)
                    cv_json.push_back({{"epsilon", e}, {"error", err}});
            }
            if (knn_metric == "etaot") {
                if (eps_used < 0.0) eps_used = 0.1;
                if (knn_omega < 0.0) { // leave-one-out choice on train
                    std::vector<double> ogrid;
                    if (!knn_omega_grid.empty())
                        ogrid = parse_double_list(knn_omega_grid, "--omega-grid");
                    else
                        ogrid = {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0};
                    int best_wrong = -1;
                    cv_json = ordered_json::array();
                    for (double om : ogrid) {
                        const auto d = tiot::distance_matrix(
                            train, train, metric_for(eps_used, om), knn_jobs);
                        const int wrong = loocv_errors(d, train);
                        cv_json.push_back({{"omega", om},
                                           {"error", double(wrong) / double(train.size())}});
                        if (best_wrong < 0 || wrong < best_wrong) {
                            best_wrong = wrong;
                            omega_used = om;
                        }
                    }
                }
            }

            std::optional<tiot::CacheKey> key;
            if (!knn_no_cache) {
                tiot::CacheKey k;
                k.dataset = file_stem(knn_train) + "-" + std::to_string(train.size()) +
                            "_" + file_stem(knn_test) + "-" + std::to_string(test.size());
                k.metric = knn_metric;
                auto num = [](double x) {
                    std::ostringstream ss;
                    ss << std::setprecision(17) << x;
                    return ss.str();
                };
                k.params = {{"eps", num(eps_used)},
                            {"omega", num(omega_used)},
                            {"tol", num(sf.tol)},
                            {"freq", std::to_string(sf.freq)},
                            {"max_iters", std::to_string(sf.max_iters)},
                            {"stepsize", sf.stepsize}};
                key = k;
            }
            const auto d = tiot::distance_matrix(test, train,
                                                 metric_for(eps_used, omega_used),
                                                 knn_jobs, key);
            const auto res = tiot::knn1_classify(train, test, d);

            tiot::Report rep;
            rep.kind = "knn";
            rep.dataset = file_stem(knn_train);
            rep.parameters = {{"metric", knn_metric},
                              {"folds", std::to_string(knn_folds)},
                              {"seed", std::to_string(knn_seed)},
                              {"stratified", stratified ? "yes" : "no"}};
            rep.columns = {"metric", "epsilon", "omega", "error_rate", "n_train",
                           "n_test"};
            rep.rows.push_back({knn_metric,
                                knn_metric == "ed" ? tiot::Report::Cell(std::string())
                                                   : tiot::Report::Cell(eps_used),
                                knn_metric == "etaot" ? tiot::Report::Cell(omega_used)
                                                      : tiot::Report::Cell(std::string()),
                                res.error_rate, double(train.size()),
                                double(test.size())});
            const auto paths = write_report(rep, knn_of);

            ordered_json j;
            j["command"] = "knn";
            j["metric"] = knn_metric;
            j["error_rate"] = res.error_rate;
            if (knn_metric != "ed") j["epsilon"] = eps_used;
            if (knn_metric == "etaot") j["omega"] = omega_used;
            if (!cv_json.is_null()) j["cv"] = cv_json;
            j["stratified"] = stratified;
            j["seed"] = knn_seed;
            j["written"] = paths;
            echo(j);
            return 0;
        }

        if (*lag) {
            lag_cfg.exact_tiot = !lag_no_exact;
            lag_cfg.fixed_ws = parse_double_list(lag_ws, "--ws");
            const auto climate = tiot::read_climate_csv(lag_csv);
            tiot::Report rep = tiot::lag_analysis(climate, lag_cfg);
            rep.dataset = file_stem(lag_csv);
            rep.parameters.emplace_back("seed", std::to_string(lag_seed));
            const auto paths = write_report(rep, lag_of);
            ordered_json j;
            j["command"] = "lag";
            j["rows"] = rep.rows.size();
            j["seed"] = lag_seed;
            j["written"] = paths;
            echo(j);
            return 0;
        }

        if (*conv) {
            const auto eps_list = parse_double_list(conv_eps_list, "--eps-list");
            std::vector<std::uint64_t> seeds;
            for (int s = 0; s < conv_seeds; ++s) seeds.push_back(conv_seed + s);
            tiot::HbcdConfig base = to_config(conv_sf);
            tiot::Report rep = tiot::convergence_study(conv_n, eps_list, seeds, base);
            rep.parameters.emplace_back("seed", std::to_string(conv_seed));
            const auto paths = write_report(rep, conv_of);
            ordered_json j;
            j["command"] = "converge";
            j["rows"] = rep.rows.size();
            j["seed"] = conv_seed;
            j["written"] = paths;
            echo(j);
            return 0;
        }

        if (*bench) {
            bench_cfg.sizes = parse_int_list(bench_sizes, "--sizes");
            tiot::Report rep = tiot::runtime_bench(bench_cfg);
            const auto paths = write_report(rep, bench_of);
            ordered_json j;
            j["command"] = "bench";
            j["rows"] = rep.rows.size();
            j["seed"] = bench_cfg.seed;
            j["written"] = paths;
            echo(j);
            return 0;
        }

        if (*gen) {
            const auto [x, y] = tiot::gen_gaussian_pair(gen_seed, gen_n, !gen_no_noise);
            auto dump = [](const tiot::TimeSeries& ts, const std::string& path) {
                std::ofstream out(path);
                if (!out) throw tiot::ParseError("cannot write " + path);
                out << std::setprecision(17);
                for (Eigen::Index i = 0; i < ts.length(); ++i)
                    out << ts.values()(0, i) << "\n";
            };
            dump(x, gen_out_a);
            dump(y, gen_out_b);
            ordered_json j;
            j["command"] = "gen";
            j["seed"] = gen_seed;
            j["n"] = gen_n;
            j["written"] = {gen_out_a, gen_out_b};
            echo(j);
            return 0;
        }
    } catch (const tiot::ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const tiot::InvalidInput& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const tiot::SolverFailure& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
