#pragma once

#include <chrono>
#include <optional>

#include "tiot/cost.hpp"
#include "tiot/transport_plan.hpp"

namespace tiot {

struct OtSolution {
    TransportPlan plan;
    double value = 0.0;
    // Dual potentials from the final basis; u_i + v_j <= c_ij up to
    // rounding, with equality on the support.
    VectorXd u, v;
    long pivots = 0;
};

struct OtSimplexOptions {
    long max_pivots = 0; // 0 = pick from problem size
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Exact discrete OT by the transportation (network) simplex on a dense
// cost matrix. Weights must be positive and each sum to 1 within 1e-9.
// Final flows are recomputed from the spanning tree so marginals match
// to ~1e-15 regardless of pivot count.
OtSolution solve_discrete_ot(const MatrixXd& cost, const VectorXd& a, const VectorXd& b,
                             const OtSimplexOptions& opts = {});

} // namespace tiot
