#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tiot/data_io.hpp"
#include "tiot/entropic.hpp"

namespace tiot {

// Tabular result of one experiment run. Serializes to CSV and JSON; cells
// are doubles or short strings (solver names, flags). Doubles round-trip
// exactly (max_digits10 in CSV, shortest-round-trip in JSON).
struct Report {
    using Cell = std::variant<double, std::string>;

    std::string kind;    // knn | lag | lag_w | convergence | runtime | alignment
    std::string dataset;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::string timestamp; // empty = left out of the filename
};

// <kind>_<dataset>[_<timestamp>] without extension.
std::string report_basename(const Report& r);
void write_report_csv(const Report& r, const std::string& path);
void write_report_json(const Report& r, const std::string& path);
Report read_report_json(const std::string& path);
std::vector<std::vector<Report::Cell>> read_report_csv_rows(const std::string& path);
std::string utc_timestamp(); // YYYYMMDDTHHMMSSZ

// Runs fn(0..count-1) on up to jobs workers. jobs <= 0 means hardware
// concurrency. Cells must be independent; order of execution is unspecified.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

using MetricFn = std::function<double(const TimeSeries&, const TimeSeries&)>;

// Pairwise-distance cache: a text matrix plus a JSON sidecar recording
// the key; hits require the sidecar to match exactly. Lives under
// $TIOT_CACHE_DIR, default .tiot_cache.
struct CacheKey {
    std::string dataset; // includes the split sizes
    std::string metric;
    std::vector<std::pair<std::string, std::string>> params;
};
std::string cache_dir();
std::optional<MatrixXd> cache_load(const CacheKey& key);
void cache_store(const CacheKey& key, const MatrixXd& m);

// rows x cols distance matrix, cells computed in parallel, cached when a
// key is given.
MatrixXd distance_matrix(const std::vector<TimeSeries>& row_set,
                         const std::vector<TimeSeries>& col_set, const MetricFn& metric,
                         int jobs = 0, const std::optional<CacheKey>& cache = std::nullopt);

// 1-nearest-neighbor vote from a test x train distance matrix; distance
// ties go to the lowest train index. Error rate counts label mismatches.
struct KnnResult {
    std::vector<int> predicted;
    double error_rate = 0.0;
};
KnnResult knn1_classify(const std::vector<TimeSeries>& train,
                        const std::vector<TimeSeries>& test, const MatrixXd& dists);

// k-fold CV over a regularization grid; per-class shuffled round-robin
// fold assignment (falls back to unstratified, flagged, when some class
// has fewer members than folds). Mean-error ties pick the smaller value.
struct CvResult {
    double best = 0.0;
    bool stratified = true;
    std::vector<std::pair<double, double>> mean_error_by_value; // (grid value, error)
};
CvResult cv_epsilon(const std::vector<TimeSeries>& train, const std::vector<double>& grid,
                    int folds, std::uint64_t seed,
                    const std::function<MetricFn(double)>& metric_for, int jobs = 0);

// How the entropic solution approaches the exact one on a single pair:
// per epsilon, |value gap|, L1 gap to one exact optimal plan, and L1 gap
// to the independent coupling a b'.
struct ConvergenceRow {
    double epsilon = 0.0;
    double value_dev = 0.0;
    double plan_dev = 0.0;
    double plan_dev_indep = 0.0;
};
std::vector<ConvergenceRow> convergence_pair_study(const TimeSeries& x, const TimeSeries& y,
                                                   const std::vector<double>& epsilons,
                                                   const HbcdConfig& base = {});
// Ensemble version over seeded bump pairs of length n; rows carry the
// median of each deviation across seeds.
Report convergence_study(int n, const std::vector<double>& epsilons,
                         const std::vector<std::uint64_t>& seeds,
                         const HbcdConfig& base = {});

struct BenchConfig {
    std::vector<int> sizes{10, 50, 100};
    double epsilon = 0.1;
    int reps = 5;              // median wall time over this many runs
    int lp_cutoff = 50;        // skip the LP column above this n (memory/time)
    int exact_ot_cutoff = 1000;
    double cell_timeout_sec = 60.0; // exceeded cells recorded as missing
    std::uint64_t seed = 1;
};
// Columns: solver, n, median_sec, reps; missing cells get an empty string
// in place of the time.
Report runtime_bench(const BenchConfig& cfg);

struct LagConfig {
    int window = 365;
    int max_ell = 0; // 0 = as many full windows as the series allows
    int step = 1;
    std::vector<double> fixed_ws{0.2, 0.5, 0.8};
    bool exact_tiot = true;  // D_2 column (bisection solver)
    bool etiot = false;      // optional entropic column
    double etiot_eps = 0.1;
    int jobs = 0;
};
// Distance from the lead window x^(1) to each lagged window x^(l); both
// windows z-scored per window. Columns: ell, then one per metric, then
// w_star when the exact column is on.
Report lag_analysis(const TimeSeries& climate, const LagConfig& cfg);
// Companion sweep: exact OT distance as a function of w at fixed lags.
Report lag_w_sweep(const TimeSeries& climate, const std::vector<int>& ells,
                   const std::vector<double>& w_grid, int window = 365);

struct AlignmentConfig {
    bool exact = false; // exact solver instead of HBCD
    double epsilon = 0.1;
    std::optional<double> threshold; // default 0.5/(m*n)
    bool also_exact_w = true;        // report the exact w* next to the entropic one
    int exact_w_size_cap = 200;      // skip that extra solve above this m
};
// Support of the optimal plan: rows (i, j, pi_ij, flag) for entries above
// threshold; the w used (and the exact w* when cheap) land in parameters.
Report alignment_export(const TimeSeries& x, const TimeSeries& y,
                        const AlignmentConfig& cfg = {});

} // namespace tiot
