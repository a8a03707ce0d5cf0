#pragma once

#include <Eigen/Dense>

#include "tiot/time_series.hpp"

namespace tiot {

// Holds the two halves of the time-aware ground cost between measures
// alpha and beta:
//   gamma_ij = |x_i - y_j|_p^p   (feature part)
//   phi_ij   = |t_i - s_j|^p     (time part)
// The blended cost at mixing weight w in [0,1] is w*gamma + (1-w)*phi.
class CostPair {
public:
    CostPair(MatrixXd gamma, MatrixXd phi, double order);

    MatrixXd combine(double w) const;

    Eigen::Index rows() const { return gamma_.rows(); }
    Eigen::Index cols() const { return gamma_.cols(); }
    const MatrixXd& gamma() const { return gamma_; }
    const MatrixXd& phi() const { return phi_; }
    double order() const { return order_; }

    // max entry over both halves; equals max(|C(0)|_inf, |C(1)|_inf) and
    // bounds |C(w)|_inf for every w by convexity.
    double c_inf() const { return c_inf_; }
    // max |gamma_ij - phi_ij|; Lipschitz constant of c_ij(w) in w.
    double c_tilde_inf() const { return c_tilde_inf_; }

private:
    MatrixXd gamma_;
    MatrixXd phi_;
    double order_;
    double c_inf_;
    double c_tilde_inf_;
};

CostPair build_cost_pair(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         double p = 2.0);

} // namespace tiot
