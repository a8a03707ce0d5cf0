#pragma once

#include "tiot/ot_simplex.hpp"

namespace tiot {

// Inner OT value T(w) = min_pi <w*gamma + (1-w)*phi, pi> together with a
// supergradient <gamma - phi, pi_w> of the concave piecewise-linear T.
struct ValueSlope {
    double value = 0.0;
    double slope = 0.0;
    TransportPlan plan;
};

ValueSlope value_and_supergradient(const CostPair& cp, const VectorXd& a,
                                   const VectorXd& b, double w,
                                   const OtSimplexOptions& ot_opts = {});

struct ExactTiotSolution {
    double value = 0.0;    // max_w T(w), the p-th power of the distance
    double distance = 0.0; // value^(1/p)
    double w_star = 0.0;
    TransportPlan plan;    // optimal plan at w_star
    double slope_at_w = 0.0;
    double bracket_lo = 0.0, bracket_hi = 1.0; // final bisection bracket
    long ot_solves = 0;
};

// Outer maximization of T over [0,1] by supergradient bisection. Checks
// the endpoints first (slope(0) <= 0 or slope(1) >= 0 settle the max
// there), otherwise maintains a sign-changing bracket until it is
// narrower than w_tol and reports the best of lo, mid, hi. When T is
// flat near the top the reported w_star is one maximizer among many.
ExactTiotSolution tiot_exact(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                             double w_tol = 1e-9, const OtSimplexOptions& ot_opts = {});

} // namespace tiot
