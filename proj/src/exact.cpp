#include "tiot/exact.hpp"

#include <cmath>

#include "tiot/errors.hpp"

namespace tiot {

ValueSlope value_and_supergradient(const CostPair& cp, const VectorXd& a,
                                   const VectorXd& b, double w,
                                   const OtSimplexOptions& ot_opts) {
    OtSolution sol = solve_discrete_ot(cp.combine(w), a, b, ot_opts);
    ValueSlope out;
    out.value = sol.value;
    out.slope = ((cp.gamma() - cp.phi()).array() * sol.plan.matrix.array()).sum();
    out.plan = std::move(sol.plan);
    return out;
}

// T(w) = min_pi <C(w), pi> is concave piecewise linear with supergradient
// <gamma - phi, pi_w>. If the slope is already <= 0 at w = 0 (or >= 0 at
// w = 1) the endpoint is a maximizer; otherwise bisect on the slope sign.
ExactTiotSolution tiot_exact(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                             double w_tol, const OtSimplexOptions& ot_opts) {
    if (!(w_tol > 0)) throw InvalidInput("tiot_exact: w_tol must be positive");

    ExactTiotSolution out;
    long solves = 0;
    auto eval = [&](double w) {
        ++solves;
        return value_and_supergradient(cp, a, b, w, ot_opts);
    };
    auto finish = [&](double w, ValueSlope vs, double lo, double hi) {
        out.value = vs.value;
        out.distance = std::pow(std::max(vs.value, 0.0), 1.0 / cp.order());
        out.w_star = w;
        out.plan = std::move(vs.plan);
        out.slope_at_w = vs.slope;
        out.bracket_lo = lo;
        out.bracket_hi = hi;
        out.ot_solves = solves;
        return out;
    };

    ValueSlope at0 = eval(0.0);
    if (at0.slope <= 0.0) return finish(0.0, std::move(at0), 0.0, 0.0);
    ValueSlope at1 = eval(1.0);
    if (at1.slope >= 0.0) return finish(1.0, std::move(at1), 1.0, 1.0);

    // slope(lo) > 0 > slope(hi) from here on
    double lo = 0.0, hi = 1.0;
    ValueSlope vlo = std::move(at0), vhi = std::move(at1);
    int guard = 0;
    while (hi - lo > w_tol && ++guard < 128) {
        const double mid = 0.5 * (lo + hi);
        ValueSlope vm = eval(mid);
        if (vm.slope == 0.0) return finish(mid, std::move(vm), lo, hi);
        if (vm.slope > 0.0) {
            lo = mid;
            vlo = std::move(vm);
        } else {
            hi = mid;
            vhi = std::move(vm);
        }
    }
    const double mid = 0.5 * (lo + hi);
    ValueSlope vm = eval(mid);
    // best of the three probes; the bracket pins the true maximizer
    double bw = mid;
    ValueSlope* best = &vm;
    if (vlo.value > best->value) {
        bw = lo;
        best = &vlo;
    }
    if (vhi.value > best->value) {
        bw = hi;
        best = &vhi;
    }
    return finish(bw, std::move(*best), lo, hi);
}

} // namespace tiot
