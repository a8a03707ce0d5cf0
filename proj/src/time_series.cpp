#include "tiot/time_series.hpp"

#include <cmath>

namespace tiot {

TimeSeries::TimeSeries(MatrixXd values, VectorXd timestamps, std::optional<int> label)
    : values_(std::move(values)), timestamps_(std::move(timestamps)), label_(label) {
    if (values_.cols() != timestamps_.size())
        throw InvalidInput("time series: " + std::to_string(values_.cols()) +
                           " samples vs " + std::to_string(timestamps_.size()) +
                           " timestamps");
    if (values_.cols() == 0)
        throw InvalidInput("time series: empty");
    if (!values_.allFinite() || !timestamps_.allFinite())
        throw InvalidInput("time series: non-finite entries");
}

TimeSeries TimeSeries::univariate(const VectorXd& values, std::optional<int> label) {
    VectorXd t = VectorXd::LinSpaced(values.size(), 1.0, double(values.size()));
    return univariate(values, t, label);
}

TimeSeries TimeSeries::univariate(const VectorXd& values, const VectorXd& timestamps,
                                  std::optional<int> label) {
    MatrixXd v(1, values.size());
    v.row(0) = values.transpose();
    return TimeSeries(std::move(v), timestamps, label);
}

namespace {

// Population z-score of one row; constant rows (relative to their own
// magnitude) collapse to zero instead of amplifying rounding noise.
void zscore_row(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row) {
    const double mu = row.mean();
    const double var = (row.array() - mu).square().mean();
    const double sd = std::sqrt(var);
    if (sd <= 1e-12 * (1.0 + std::abs(mu))) {
        row.setZero();
    } else {
        row = (row.array() - mu) / sd;
    }
}

} // namespace

TimeSeries zscore_normalize(const TimeSeries& ts) {
    MatrixXd v = ts.values();
    for (Eigen::Index d = 0; d < v.rows(); ++d)
        zscore_row(v.row(d));
    VectorXd t = ts.timestamps();
    Eigen::RowVectorXd tr = t.transpose();
    zscore_row(tr);
    t = tr.transpose();
    return TimeSeries(std::move(v), std::move(t), ts.label());
}

double euclidean_dist(const TimeSeries& x, const TimeSeries& y) {
    if (x.length() != y.length() || x.dim() != y.dim())
        throw InvalidInput("euclidean_dist: shape mismatch");
    return (x.values() - y.values()).norm();
}

DiscreteMeasure::DiscreteMeasure(MatrixXd points, VectorXd times, VectorXd weights)
    : points_(std::move(points)), times_(std::move(times)), weights_(std::move(weights)) {
    if (points_.cols() != times_.size() || times_.size() != weights_.size())
        throw InvalidInput("discrete measure: inconsistent sizes");
    if (times_.size() == 0)
        throw InvalidInput("discrete measure: empty");
    if ((weights_.array() <= 0.0).any())
        throw InvalidInput("discrete measure: nonpositive weight");
    const double s = weights_.sum();
    if (std::abs(s - 1.0) > 1e-9)
        throw InvalidInput("discrete measure: weights sum to " + std::to_string(s));
    weights_ /= s; // exact to machine precision from here on
}

DiscreteMeasure lift_to_measure(const TimeSeries& ts, std::optional<VectorXd> weights) {
    VectorXd w;
    if (weights) {
        w = std::move(*weights);
        if (w.size() != ts.length())
            throw InvalidInput("lift_to_measure: weight count mismatch");
    } else {
        w = VectorXd::Constant(ts.length(), 1.0 / double(ts.length()));
    }
    return DiscreteMeasure(ts.values(), ts.timestamps(), std::move(w));
}

} // namespace tiot
