#pragma once

#include <chrono>
#include <optional>

#include "tiot/cost.hpp"

namespace tiot {

struct LpDualOptions {
    long max_iters = 0; // 0 = pick from problem size
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct LpDualSolution {
    double value = 0.0; // max-min transport value (= -LP optimum)
    VectorXd u, v;
    double w = 0.0;
    long iterations = 0;
};

// Cross-check oracle: solves the single LP
//   min  a'u + b'v
//   s.t. -u_i - v_j + (phi_ij - gamma_ij) w <= phi_ij  for all i,j
//        0 <= w <= 1
// over z = [u; v; w] with a dense simplex (slack basis start, Dantzig
// pricing with a Bland fallback). Its optimum is the negated max-min
// transport value, so value = -optimum here. One LP row per cost entry:
// desk scale only, roughly m*n <= 1e4.
LpDualSolution tiot_lp_dual(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                            const LpDualOptions& opts = {});

} // namespace tiot
