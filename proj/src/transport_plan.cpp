#include "tiot/transport_plan.hpp"

namespace tiot {

double TransportPlan::row_residual_l1(const VectorXd& a) const {
    return (row_marginal() - a).cwiseAbs().sum();
}

double TransportPlan::col_residual_l1(const VectorXd& b) const {
    return (col_marginal() - b).cwiseAbs().sum();
}

} // namespace tiot
