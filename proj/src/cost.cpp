#include "tiot/cost.hpp"

#include <cmath>

namespace tiot {

CostPair::CostPair(MatrixXd gamma, MatrixXd phi, double order)
    : gamma_(std::move(gamma)), phi_(std::move(phi)), order_(order) {
    if (gamma_.rows() != phi_.rows() || gamma_.cols() != phi_.cols())
        throw InvalidInput("cost pair: gamma/phi shape mismatch");
    if (gamma_.rows() == 0 || gamma_.cols() == 0)
        throw InvalidInput("cost pair: empty");
    if (!gamma_.allFinite() || !phi_.allFinite())
        throw InvalidInput("cost pair: non-finite cost entry");
    if ((gamma_.array() < 0).any() || (phi_.array() < 0).any())
        throw InvalidInput("cost pair: negative cost entry");
    c_inf_ = std::max(gamma_.maxCoeff(), phi_.maxCoeff());
    c_tilde_inf_ = (gamma_ - phi_).cwiseAbs().maxCoeff();
}

MatrixXd CostPair::combine(double w) const {
    if (!(w >= 0.0 && w <= 1.0))
        throw InvalidInput("combine: w outside [0,1]");
    return w * gamma_ + (1.0 - w) * phi_;
}

CostPair build_cost_pair(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                         double p) {
    if (alpha.dim() != beta.dim())
        throw InvalidInput("build_cost_pair: feature dimensions differ");
    if (!(p >= 1.0))
        throw InvalidInput("build_cost_pair: order p must be >= 1");
    const Eigen::Index m = alpha.size(), n = beta.size();
    MatrixXd gamma(m, n), phi(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto diff = alpha.points().col(i) - beta.points().col(j);
            const double dt = std::abs(alpha.times()(i) - beta.times()(j));
            if (p == 2.0) {
                gamma(i, j) = diff.squaredNorm();
                phi(i, j) = dt * dt;
            } else if (p == 1.0) {
                gamma(i, j) = diff.cwiseAbs().sum();
                phi(i, j) = dt;
            } else {
                gamma(i, j) = diff.cwiseAbs().array().pow(p).sum();
                phi(i, j) = std::pow(dt, p);
            }
        }
    }
    return CostPair(std::move(gamma), std::move(phi), p);
}

} // namespace tiot
