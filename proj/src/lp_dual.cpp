#include "tiot/lp_dual.hpp"

#include <cmath>
#include <vector>

#include "tiot/errors.hpp"

namespace tiot {

// Dense tableau simplex on the max-min dual LP. Variable order:
//   [u+ (m) | u- (m) | v+ (n) | v- (n) | w | s (mn) | s_w]
// with one row per cost cell plus the w <= 1 bound row. The slack basis
// is feasible because the right-hand side is phi >= 0, so no phase 1.
LpDualSolution tiot_lp_dual(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                            const LpDualOptions& opts) {
    const Eigen::Index m = cp.rows(), n = cp.cols();
    if (a.size() != m || b.size() != n)
        throw InvalidInput("tiot_lp_dual: weight sizes do not match cost");
    if ((a.array() <= 0).any() || (b.array() <= 0).any())
        throw InvalidInput("tiot_lp_dual: weights must be positive");
    if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
        throw InvalidInput("tiot_lp_dual: weights must sum to 1");

    const Eigen::Index R = m * n + 1;
    const Eigen::Index iw = 2 * m + 2 * n; // column of the w variable
    const Eigen::Index V = 2 * m + 2 * n + 1 + m * n + 1;

    // tableau T holds [A | rhs]; z is the reduced-cost row, zrhs the
    // negated objective value.
    MatrixXd T = MatrixXd::Zero(R, V + 1);
    VectorXd z = VectorXd::Zero(V);
    double zrhs = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        z(i) = a(i);
        z(m + i) = -a(i);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        z(2 * m + j) = b(j);
        z(2 * m + n + j) = -b(j);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Index r = i * n + j;
            T(r, i) = -1.0;
            T(r, m + i) = 1.0;
            T(r, 2 * m + j) = -1.0;
            T(r, 2 * m + n + j) = 1.0;
            T(r, iw) = cp.phi()(i, j) - cp.gamma()(i, j);
            T(r, iw + 1 + r) = 1.0;
            T(r, V) = cp.phi()(i, j);
        }
    }
    T(R - 1, iw) = 1.0;
    T(R - 1, V - 1) = 1.0;
    T(R - 1, V) = 1.0;

    std::vector<Eigen::Index> basis(R);
    for (Eigen::Index r = 0; r < R; ++r) basis[r] = iw + 1 + r;

    const double scale = 1.0 + cp.c_inf() + cp.c_tilde_inf();
    const double tol_rc = 1e-10 * scale;
    const double tol_piv = 1e-11 * scale;
    const long max_iters = opts.max_iters > 0 ? opts.max_iters : 2000 + 40 * long(R);

    bool bland = false;
    long degen_streak = 0;
    long it = 0;
    for (;; ++it) {
        if (it > max_iters)
            throw SolverFailure("lp simplex: iteration budget exhausted");
        if (opts.deadline && (it & 15) == 0 &&
            std::chrono::steady_clock::now() > *opts.deadline)
            throw SolverTimeout("lp simplex: deadline exceeded");

        Eigen::Index e = -1;
        if (!bland) {
            double best = -tol_rc;
            for (Eigen::Index c = 0; c < V; ++c)
                if (z(c) < best) {
                    best = z(c);
                    e = c;
                }
        } else {
            for (Eigen::Index c = 0; c < V; ++c)
                if (z(c) < -tol_rc) {
                    e = c;
                    break;
                }
        }
        if (e < 0) break; // optimal

        Eigen::Index pr = -1;
        double best_ratio = 0.0;
        for (Eigen::Index r = 0; r < R; ++r) {
            const double piv = T(r, e);
            if (piv > tol_piv) {
                const double ratio = T(r, V) / piv;
                if (pr < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 && basis[r] < basis[pr])) {
                    pr = r;
                    best_ratio = std::max(ratio, 0.0);
                }
            }
        }
        if (pr < 0)
            throw SolverFailure("lp simplex: unbounded direction (should not happen)");

        if (T(pr, V) <= tol_piv) {
            if (++degen_streak > 100) bland = true;
        } else {
            degen_streak = 0;
        }

        // pivot on (pr, e)
        T.row(pr) /= T(pr, e);
        for (Eigen::Index r = 0; r < R; ++r) {
            if (r == pr) continue;
            const double f = T(r, e);
            if (f != 0.0) T.row(r) -= f * T.row(pr);
        }
        const double fz = z(e);
        if (fz != 0.0) {
            z -= fz * T.row(pr).head(V);
            zrhs -= fz * T(pr, V);
        }
        basis[pr] = e;
    }

    // objective = -zrhs; the transport value is its negation
    LpDualSolution out;
    VectorXd x = VectorXd::Zero(V);
    for (Eigen::Index r = 0; r < R; ++r) x(basis[r]) = T(r, V);
    out.u = x.segment(0, m) - x.segment(m, m);
    out.v = x.segment(2 * m, n) - x.segment(2 * m + n, n);
    out.w = x(iw);
    out.value = zrhs; // = -(min objective)
    out.iterations = it;
    return out;
}

} // namespace tiot
