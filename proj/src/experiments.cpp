#include "tiot/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tiot/errors.hpp"
#include "tiot/exact.hpp"
#include "tiot/lp_dual.hpp"

namespace tiot {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string cell_to_string(const Report::Cell& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    std::ostringstream ss;
    ss << std::setprecision(17) << std::get<double>(c);
    return ss.str();
}

double median_of(std::vector<double> v) {
    if (v.empty()) throw InvalidInput("median of nothing");
    std::sort(v.begin(), v.end());
    const size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

std::string fmt_param(double x) {
    std::ostringstream ss;
    ss << std::setprecision(17) << x;
    return ss.str();
}

} // namespace

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
    return ss.str();
}

std::string report_basename(const Report& r) {
    std::string s = r.kind + "_" + r.dataset;
    if (!r.timestamp.empty()) s += "_" + r.timestamp;
    return s;
}

void write_report_csv(const Report& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "# kind," << r.kind << "\n# dataset," << r.dataset << "\n";
    for (const auto& [k, v] : r.parameters) out << "# param," << k << "," << v << "\n";
    for (size_t c = 0; c < r.columns.size(); ++c)
        out << (c ? "," : "") << r.columns[c];
    out << "\n";
    for (const auto& row : r.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << cell_to_string(row[c]);
        out << "\n";
    }
}

void write_report_json(const Report& r, const std::string& path) {
    ordered_json j;
    j["kind"] = r.kind;
    j["dataset"] = r.dataset;
    j["timestamp"] = r.timestamp;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = params;
    j["columns"] = r.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json jr = ordered_json::array();
        for (const auto& c : row) {
            if (std::holds_alternative<double>(c))
                jr.push_back(std::get<double>(c));
            else
                jr.push_back(std::get<std::string>(c));
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = rows;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

Report read_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": bad JSON: " + e.what());
    }
    Report r;
    r.kind = j.at("kind").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.timestamp = j.value("timestamp", "");
    for (auto& [k, v] : j.at("parameters").items())
        r.parameters.emplace_back(k, v.get<std::string>());
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
        std::vector<Report::Cell> row;
        for (const auto& c : jr) {
            if (c.is_number())
                row.emplace_back(c.get<double>());
            else
                row.emplace_back(c.get<std::string>());
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

std::vector<std::vector<Report::Cell>> read_report_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<Report::Cell>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { // column names
            header_seen = true;
            continue;
        }
        std::vector<Report::Cell> row;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) {
            char* end = nullptr;
            const double x = std::strtod(field.c_str(), &end);
            if (!field.empty() && end == field.c_str() + field.size())
                row.emplace_back(x);
            else
                row.emplace_back(field);
        }
        if (!line.empty() && line.back() == ',') row.emplace_back(std::string());
        rows.push_back(std::move(row));
    }
    return rows;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned workers = jobs > 0 ? unsigned(jobs) : std::thread::hardware_concurrency();
    if (workers < 1) workers = 1;
    workers = unsigned(std::min<std::size_t>(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string cache_dir() {
    if (const char* env = std::getenv("TIOT_CACHE_DIR"); env && *env) return env;
    return ".tiot_cache";
}

namespace {

std::string cache_stem(const CacheKey& key) {
    // FNV-1a over the serialized key; collisions are caught by the
    // sidecar comparison on load.
    ordered_json j;
    j["dataset"] = key.dataset;
    j["metric"] = key.metric;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : key.params) params[k] = v;
    j["params"] = params;
    const std::string s = j.dump();
    std::uint64_t hsh = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        hsh ^= ch;
        hsh *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << key.metric << "_" << std::hex << std::setw(16) << std::setfill('0') << hsh;
    return ss.str();
}

ordered_json cache_sidecar(const CacheKey& key) {
    ordered_json j;
    j["dataset"] = key.dataset;
    j["metric"] = key.metric;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : key.params) params[k] = v;
    j["params"] = params;
    return j;
}

} // namespace

std::optional<MatrixXd> cache_load(const CacheKey& key) {
    namespace fs = std::filesystem;
    const fs::path dir = cache_dir();
    const std::string stem = cache_stem(key);
    const fs::path mat = dir / (stem + ".txt"), side = dir / (stem + ".json");
    if (!fs::exists(mat) || !fs::exists(side)) return std::nullopt;
    try {
        std::ifstream sin(side);
        ordered_json j;
        sin >> j;
        if (j != cache_sidecar(key)) return std::nullopt;
        std::ifstream min(mat);
        Eigen::Index rows = 0, cols = 0;
        if (!(min >> rows >> cols) || rows < 0 || cols < 0) return std::nullopt;
        MatrixXd out(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j2 = 0; j2 < cols; ++j2)
                if (!(min >> out(i, j2))) return std::nullopt;
        return out;
    } catch (...) {
        return std::nullopt;
    }
}

void cache_store(const CacheKey& key, const MatrixXd& m) {
    namespace fs = std::filesystem;
    const fs::path dir = cache_dir();
    fs::create_directories(dir);
    const std::string stem = cache_stem(key);
    {
        std::ofstream out(dir / (stem + ".txt"));
        out << m.rows() << " " << m.cols() << "\n" << std::setprecision(17);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                out << (j ? " " : "") << m(i, j);
            out << "\n";
        }
    }
    std::ofstream side(dir / (stem + ".json"));
    side << cache_sidecar(key).dump(2) << "\n";
}

MatrixXd distance_matrix(const std::vector<TimeSeries>& row_set,
                         const std::vector<TimeSeries>& col_set, const MetricFn& metric,
                         int jobs, const std::optional<CacheKey>& cache) {
    const Eigen::Index R = Eigen::Index(row_set.size()), C = Eigen::Index(col_set.size());
    if (cache) {
        if (auto hit = cache_load(*cache); hit && hit->rows() == R && hit->cols() == C)
            return *hit;
    }
    MatrixXd d(R, C);
    parallel_for(std::size_t(R * C), jobs, [&](std::size_t k) {
        const Eigen::Index i = Eigen::Index(k) / C, j = Eigen::Index(k) % C;
        d(i, j) = metric(row_set[i], col_set[j]);
    });
    if (cache) cache_store(*cache, d);
    return d;
}

KnnResult knn1_classify(const std::vector<TimeSeries>& train,
                        const std::vector<TimeSeries>& test, const MatrixXd& dists) {
    if (dists.rows() != Eigen::Index(test.size()) ||
        dists.cols() != Eigen::Index(train.size()))
        throw InvalidInput("knn1_classify: distance matrix shape mismatch");
    if (train.empty()) throw InvalidInput("knn1_classify: empty train set");
    KnnResult out;
    out.predicted.reserve(test.size());
    int wrong = 0;
    for (Eigen::Index t = 0; t < dists.rows(); ++t) {
        Eigen::Index best = 0;
        for (Eigen::Index r = 1; r < dists.cols(); ++r)
            if (dists(t, r) < dists(t, best)) best = r; // strict: ties keep lowest index
        const auto& lab = train[best].label();
        if (!lab) throw InvalidInput("knn1_classify: unlabeled train series");
        out.predicted.push_back(*lab);
        const auto& truth = test[t].label();
        if (truth && *truth != *lab) ++wrong;
    }
    out.error_rate = test.empty() ? 0.0 : double(wrong) / double(test.size());
    return out;
}

CvResult cv_epsilon(const std::vector<TimeSeries>& train, const std::vector<double>& grid,
                    int folds, std::uint64_t seed,
                    const std::function<MetricFn(double)>& metric_for, int jobs) {
    if (folds < 2) throw InvalidInput("cv_epsilon: need at least 2 folds");
    if (grid.empty()) throw InvalidInput("cv_epsilon: empty grid");
    if (Eigen::Index(train.size()) < folds)
        throw InvalidInput("cv_epsilon: fewer series than folds");

    // Per-class shuffled round-robin keeps label balance; fall back to a
    // plain shuffle when some class is too small to spread over folds.
    std::map<int, std::vector<int>> by_class;
    for (size_t i = 0; i < train.size(); ++i) {
        const auto& lab = train[i].label();
        if (!lab) throw InvalidInput("cv_epsilon: unlabeled train series");
        by_class[*lab].push_back(int(i));
    }
    bool stratified = true;
    for (const auto& [lab, idx] : by_class)
        if (int(idx.size()) < folds) stratified = false;

    std::vector<int> fold_of(train.size());
    std::mt19937_64 rng(seed);
    if (stratified) {
        for (auto& [lab, idx] : by_class) {
            std::shuffle(idx.begin(), idx.end(), rng);
            for (size_t k = 0; k < idx.size(); ++k) fold_of[idx[k]] = int(k) % folds;
        }
    } else {
        std::vector<int> idx(train.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t k = 0; k < idx.size(); ++k) fold_of[idx[k]] = int(k) % folds;
    }

    std::vector<double> sorted_grid = grid;
    std::sort(sorted_grid.begin(), sorted_grid.end());

    CvResult out;
    out.stratified = stratified;
    double best_err = std::numeric_limits<double>::infinity();
    for (double eps : sorted_grid) {
        const MetricFn metric = metric_for(eps);
        const MatrixXd d = distance_matrix(train, train, metric, jobs);
        double err_sum = 0.0;
        for (int f = 0; f < folds; ++f) {
            int wrong = 0, total = 0;
            for (size_t t = 0; t < train.size(); ++t) {
                if (fold_of[t] != f) continue;
                ++total;
                int best = -1;
                for (size_t r = 0; r < train.size(); ++r) {
                    if (fold_of[r] == f) continue;
                    if (best < 0 || d(Eigen::Index(t), Eigen::Index(r)) <
                                        d(Eigen::Index(t), Eigen::Index(best)))
                        best = int(r);
                }
                if (*train[best].label() != *train[t].label()) ++wrong;
            }
            if (total > 0) err_sum += double(wrong) / double(total);
        }
        const double mean_err = err_sum / folds;
        out.mean_error_by_value.emplace_back(eps, mean_err);
        if (mean_err < best_err) { // strict: ties keep the smaller eps
            best_err = mean_err;
            out.best = eps;
        }
    }
    return out;
}

std::vector<ConvergenceRow> convergence_pair_study(const TimeSeries& x, const TimeSeries& y,
                                                   const std::vector<double>& epsilons,
                                                   const HbcdConfig& base) {
    const auto alpha = lift_to_measure(zscore_normalize(x));
    const auto beta = lift_to_measure(zscore_normalize(y));
    const CostPair cp = build_cost_pair(alpha, beta, 2.0);
    const auto exact = tiot_exact(cp, alpha.weights(), beta.weights());
    const MatrixXd indep = alpha.weights() * beta.weights().transpose();

    std::vector<ConvergenceRow> rows;
    for (double eps : epsilons) {
        HbcdConfig cfg = base;
        cfg.epsilon = eps;
        const auto sol = hbcd_solve(cp, alpha.weights(), beta.weights(), cfg);
        ConvergenceRow r;
        r.epsilon = eps;
        r.value_dev = std::abs(sol.transport_value - exact.value);
        r.plan_dev = (sol.plan.matrix - exact.plan.matrix).cwiseAbs().sum();
        r.plan_dev_indep = (sol.plan.matrix - indep).cwiseAbs().sum();
        rows.push_back(r);
    }
    return rows;
}

Report convergence_study(int n, const std::vector<double>& epsilons,
                         const std::vector<std::uint64_t>& seeds,
                         const HbcdConfig& base) {
    if (seeds.empty()) throw InvalidInput("convergence_study: no seeds");
    std::vector<std::vector<ConvergenceRow>> per_seed(seeds.size());
    parallel_for(seeds.size(), 0, [&](std::size_t s) {
        const auto [x, y] = gen_gaussian_pair(seeds[s], n);
        per_seed[s] = convergence_pair_study(x, y, epsilons, base);
    });

    Report rep;
    rep.kind = "convergence";
    rep.dataset = "gauss" + std::to_string(n);
    rep.parameters = {{"n", std::to_string(n)},
                      {"seeds", std::to_string(seeds.size())},
                      {"marginal_tol", fmt_param(base.marginal_tol)}};
    rep.columns = {"epsilon", "med_value_dev", "med_plan_dev", "med_plan_dev_indep"};
    for (size_t e = 0; e < epsilons.size(); ++e) {
        std::vector<double> vd, pd, pi;
        for (const auto& rows : per_seed) {
            vd.push_back(rows[e].value_dev);
            pd.push_back(rows[e].plan_dev);
            pi.push_back(rows[e].plan_dev_indep);
        }
        rep.rows.push_back({epsilons[e], median_of(vd), median_of(pd), median_of(pi)});
    }
    return rep;
}

Report runtime_bench(const BenchConfig& cfg) {
    Report rep;
    rep.kind = "runtime";
    rep.dataset = "gauss";
    rep.parameters = {{"epsilon", fmt_param(cfg.epsilon)},
                      {"reps", std::to_string(cfg.reps)},
                      {"lp_cutoff", std::to_string(cfg.lp_cutoff)},
                      {"timeout_sec", fmt_param(cfg.cell_timeout_sec)},
                      {"seed", std::to_string(cfg.seed)}};
    rep.columns = {"solver", "n", "median_sec", "reps"};

    using clock = std::chrono::steady_clock;
    for (int n : cfg.sizes) {
        const auto [xs, ys] = gen_gaussian_pair(cfg.seed, n);
        const auto alpha = lift_to_measure(zscore_normalize(xs));
        const auto beta = lift_to_measure(zscore_normalize(ys));
        const CostPair cp = build_cost_pair(alpha, beta, 2.0);
        const MatrixXd mid_cost = cp.combine(0.5);
        const VectorXd &a = alpha.weights(), &b = beta.weights();

        auto run_cell = [&](const std::string& solver,
                            const std::function<void(clock::time_point)>& once) {
            std::vector<double> times;
            bool timed_out = false;
            const auto budget = std::chrono::duration<double>(cfg.cell_timeout_sec);
            const auto cell_start = clock::now();
            for (int r = 0; r < cfg.reps; ++r) {
                const auto deadline = clock::now() + std::chrono::duration_cast<
                                                         clock::duration>(budget);
                const auto t0 = clock::now();
                try {
                    once(deadline);
                } catch (const SolverTimeout&) {
                    timed_out = true;
                    break;
                }
                times.push_back(std::chrono::duration<double>(clock::now() - t0).count());
                if (clock::now() - cell_start > budget) break; // enough reps
            }
            std::vector<Report::Cell> row{solver, double(n)};
            if (timed_out || times.empty())
                row.emplace_back(std::string());
            else
                row.emplace_back(median_of(times));
            row.emplace_back(double(times.size()));
            rep.rows.push_back(std::move(row));
        };

        run_cell("hbcd_etiot", [&](clock::time_point) {
            HbcdConfig hc;
            hc.epsilon = cfg.epsilon;
            hbcd_solve(cp, a, b, hc);
        });
        run_cell("sinkhorn_eot", [&](clock::time_point) {
            sinkhorn_fixed_cost(mid_cost, a, b, cfg.epsilon);
        });
        if (n <= cfg.exact_ot_cutoff)
            run_cell("simplex_ot", [&](clock::time_point dl) {
                OtSimplexOptions o;
                o.deadline = dl;
                solve_discrete_ot(mid_cost, a, b, o);
            });
        if (n <= cfg.lp_cutoff)
            run_cell("lp_tiot", [&](clock::time_point dl) {
                LpDualOptions o;
                o.deadline = dl;
                tiot_lp_dual(cp, a, b, o);
            });
    }
    return rep;
}

Report lag_analysis(const TimeSeries& climate, const LagConfig& cfg) {
    if (cfg.window < 1) throw InvalidInput("lag_analysis: window must be >= 1");
    const int max_ell = cfg.max_ell > 0
                            ? cfg.max_ell
                            : int(climate.length()) - cfg.window + 1;
    if (max_ell < 1 || Eigen::Index(max_ell) + cfg.window - 1 > climate.length())
        throw InvalidInput("lag_analysis: series shorter than one window");
    const auto ref = lift_to_measure(zscore_normalize(lag_window(climate, 1, cfg.window)));

    std::vector<int> ells;
    for (int ell = 1; ell <= max_ell; ell += cfg.step) ells.push_back(ell);

    Report rep;
    rep.kind = "lag";
    rep.dataset = "climate";
    rep.parameters = {{"window", std::to_string(cfg.window)},
                      {"max_ell", std::to_string(max_ell)},
                      {"step", std::to_string(cfg.step)}};
    rep.columns = {"ell"};
    if (cfg.exact_tiot) {
        rep.columns.push_back("tiot");
        rep.columns.push_back("w_star");
    }
    for (double w : cfg.fixed_ws) {
        std::ostringstream ss;
        ss << "ot_w" << w;
        rep.columns.push_back(ss.str());
    }
    if (cfg.etiot) {
        rep.columns.push_back("etiot");
        rep.columns.push_back("w_etiot");
        rep.parameters.emplace_back("etiot_eps", fmt_param(cfg.etiot_eps));
    }

    std::vector<std::vector<Report::Cell>> rows(ells.size());
    parallel_for(ells.size(), cfg.jobs, [&](std::size_t k) {
        const int ell = ells[k];
        const auto win =
            lift_to_measure(zscore_normalize(lag_window(climate, ell, cfg.window)));
        const CostPair cp = build_cost_pair(ref, win, 2.0);
        std::vector<Report::Cell> row{double(ell)};
        if (cfg.exact_tiot) {
            const auto ex = tiot_exact(cp, ref.weights(), win.weights());
            row.emplace_back(ex.distance);
            row.emplace_back(ex.w_star);
        }
        for (double w : cfg.fixed_ws) {
            const auto ot = solve_discrete_ot(cp.combine(w), ref.weights(), win.weights());
            row.emplace_back(std::sqrt(std::max(ot.value, 0.0)));
        }
        if (cfg.etiot) {
            HbcdConfig hc;
            hc.epsilon = cfg.etiot_eps;
            const auto sol = hbcd_solve(cp, ref.weights(), win.weights(), hc);
            row.emplace_back(std::sqrt(std::max(sol.transport_value, 0.0)));
            row.emplace_back(sol.w);
        }
        rows[k] = std::move(row);
    });
    rep.rows = std::move(rows);
    return rep;
}

Report lag_w_sweep(const TimeSeries& climate, const std::vector<int>& ells,
                   const std::vector<double>& w_grid, int window) {
    const auto ref = lift_to_measure(zscore_normalize(lag_window(climate, 1, window)));
    Report rep;
    rep.kind = "lag_w";
    rep.dataset = "climate";
    rep.parameters = {{"window", std::to_string(window)}};
    rep.columns = {"ell", "w", "dist"};
    for (int ell : ells) {
        const auto win = lift_to_measure(zscore_normalize(lag_window(climate, ell, window)));
        const CostPair cp = build_cost_pair(ref, win, 2.0);
        for (double w : w_grid) {
            const auto ot = solve_discrete_ot(cp.combine(w), ref.weights(), win.weights());
            rep.rows.push_back({double(ell), w, std::sqrt(std::max(ot.value, 0.0))});
        }
    }
    return rep;
}

Report alignment_export(const TimeSeries& x, const TimeSeries& y,
                        const AlignmentConfig& cfg) {
    const auto alpha = lift_to_measure(x);
    const auto beta = lift_to_measure(y);
    const CostPair cp = build_cost_pair(alpha, beta, 2.0);
    const Eigen::Index m = alpha.size(), n = beta.size();
    const double threshold = cfg.threshold ? *cfg.threshold : 0.5 / double(m * n);

    MatrixXd plan;
    double w_used;
    Report rep;
    rep.kind = "alignment";
    rep.dataset = "pair";
    if (cfg.exact) {
        const auto ex = tiot_exact(cp, alpha.weights(), beta.weights());
        plan = ex.plan.matrix;
        w_used = ex.w_star;
        rep.parameters.emplace_back("solver", "exact");
    } else {
        HbcdConfig hc;
        hc.epsilon = cfg.epsilon;
        const auto sol = hbcd_solve(cp, alpha.weights(), beta.weights(), hc);
        plan = sol.plan.matrix;
        w_used = sol.w;
        rep.parameters.emplace_back("solver", "etiot");
        rep.parameters.emplace_back("epsilon", fmt_param(cfg.epsilon));
    }
    rep.parameters.emplace_back("w", fmt_param(w_used));
    if (!cfg.exact && cfg.also_exact_w && std::max(m, n) <= cfg.exact_w_size_cap) {
        const auto ex = tiot_exact(cp, alpha.weights(), beta.weights());
        rep.parameters.emplace_back("w_exact", fmt_param(ex.w_star));
    }
    rep.parameters.emplace_back("threshold", fmt_param(threshold));

    rep.columns = {"i", "j", "mass", "above_threshold"};
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (plan(i, j) > threshold)
                rep.rows.push_back({double(i + 1), double(j + 1), plan(i, j), 1.0});
    return rep;
}

} // namespace tiot
