#pragma once

#include <Eigen/Dense>

namespace tiot {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// A coupling between two discrete measures. Entries are nonnegative;
// how closely the marginals match (a, b) depends on the producer: the
// exact solver guarantees 1e-12, the entropic solvers their marginal_tol.
struct TransportPlan {
    MatrixXd matrix;

    VectorXd row_marginal() const { return matrix.rowwise().sum(); }
    VectorXd col_marginal() const { return matrix.colwise().sum().transpose(); }

    double row_residual_l1(const VectorXd& a) const;
    double col_residual_l1(const VectorXd& b) const;
    double min_entry() const { return matrix.minCoeff(); }
    double mass() const { return matrix.sum(); }
};

} // namespace tiot
