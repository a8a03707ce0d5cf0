#pragma once

#include <Eigen/Dense>
#include <optional>

#include "tiot/errors.hpp"

namespace tiot {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// A time series is a run of d-dimensional samples with real timestamps.
// Samples are stored one per column so a column is one observation.
class TimeSeries {
public:
    TimeSeries(MatrixXd values, VectorXd timestamps,
               std::optional<int> label = std::nullopt);

    // Univariate series with timestamps synthesized as 1..m.
    static TimeSeries univariate(const VectorXd& values,
                                 std::optional<int> label = std::nullopt);
    static TimeSeries univariate(const VectorXd& values, const VectorXd& timestamps,
                                 std::optional<int> label = std::nullopt);

    Eigen::Index length() const { return values_.cols(); }
    Eigen::Index dim() const { return values_.rows(); }
    const MatrixXd& values() const { return values_; }
    const VectorXd& timestamps() const { return timestamps_; }
    const std::optional<int>& label() const { return label_; }

private:
    MatrixXd values_;     // d x m
    VectorXd timestamps_; // m
    std::optional<int> label_;
};

// Per-dimension z-score with the population convention (divide by m, not
// m-1), applied independently to values and timestamps. A zero-variance
// dimension maps to all zeros rather than dividing by zero.
TimeSeries zscore_normalize(const TimeSeries& ts);

// Plain L2 distance between two equal-shape series, ignoring timestamps.
double euclidean_dist(const TimeSeries& x, const TimeSeries& y);

// A weighted point cloud over (feature, time) atoms; weights are strictly
// positive and sum to one.
class DiscreteMeasure {
public:
    DiscreteMeasure(MatrixXd points, VectorXd times, VectorXd weights);

    Eigen::Index size() const { return times_.size(); }
    Eigen::Index dim() const { return points_.rows(); }
    const MatrixXd& points() const { return points_; }
    const VectorXd& times() const { return times_; }
    const VectorXd& weights() const { return weights_; }

private:
    MatrixXd points_;
    VectorXd times_;
    VectorXd weights_;
};

// Turns a series into a measure: uniform weights 1/m unless explicit ones
// are given. Explicit weights must be positive and sum to 1 within 1e-9;
// they are renormalized to machine accuracy.
DiscreteMeasure lift_to_measure(const TimeSeries& ts,
                                std::optional<VectorXd> weights = std::nullopt);

} // namespace tiot
