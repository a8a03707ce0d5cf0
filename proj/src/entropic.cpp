#include "tiot/entropic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "tiot/errors.hpp"

namespace tiot {

namespace {

void check_weights(const CostPair& cp, const VectorXd& a, const VectorXd& b) {
    if (a.size() != cp.rows() || b.size() != cp.cols())
        throw InvalidInput("entropic solver: weight sizes do not match cost");
    if ((a.array() <= 0).any() || (b.array() <= 0).any())
        throw InvalidInput("entropic solver: weights must be positive");
    if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
        throw InvalidInput("entropic solver: weights must sum to 1");
}

// Scaling vectors stay representable as long as the potentials (bounded
// by a small multiple of |C|_inf) divided by eps stay under ~700; below
// this ratio the plain scaling iteration risks over/underflow and the
// log-domain path takes over.
bool wants_log_domain(double epsilon, double cost_scale) {
    return epsilon < 0.02 * cost_scale;
}

double logsumexp(const Eigen::ArrayXd& x) {
    const double m = x.maxCoeff();
    if (!std::isfinite(m)) return m;
    return m + std::log((x - m).exp().sum());
}

} // namespace

double dual_objective(const VectorXd& u, const VectorXd& v, double w,
                      const CostPair& cp, const VectorXd& a, const VectorXd& b,
                      double epsilon) {
    check_weights(cp, a, b);
    if (!(epsilon > 0)) throw InvalidInput("dual_objective: epsilon must be positive");
    if (u.size() != cp.rows() || v.size() != cp.cols())
        throw InvalidInput("dual_objective: potential sizes do not match cost");
    const MatrixXd C = cp.combine(w);
    const Eigen::Index m = cp.rows(), n = cp.cols();

    double max_expo = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mj = ((u.array() + v(j) - C.col(j).array()) / epsilon).maxCoeff();
        max_expo = std::max(max_expo, mj);
    }
    double total;
    if (max_expo > 500.0) {
        // shifted evaluation; the sum itself may still overflow for a
        // genuinely divergent state, which is then reported as inf.
        const Eigen::ArrayXd la = a.array().log(), lb = b.array().log();
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            s += ((u.array() + v(j) - C.col(j).array()) / epsilon + la + lb(j) - max_expo)
                     .exp()
                     .sum();
        }
        total = std::exp(max_expo + std::log(s));
    } else {
        total = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            total += (((u.array() + v(j) - C.col(j).array()) / epsilon).exp() * a.array())
                         .sum() *
                     b(j);
        }
    }
    return -u.dot(a) - v.dot(b) + epsilon * total - epsilon;
}

double grad_w(const VectorXd& g, const VectorXd& h, double w, const CostPair& cp,
              double epsilon) {
    if (!(w >= 0 && w <= 1)) throw InvalidInput("grad_w: w outside [0,1]");
    double s = 0.0;
    for (Eigen::Index j = 0; j < cp.cols(); ++j) {
        const auto c = w * cp.gamma().col(j).array() + (1.0 - w) * cp.phi().col(j).array();
        const auto d = cp.phi().col(j).array() - cp.gamma().col(j).array();
        s += (d * (-c / epsilon).exp() * g.array()).sum() * h(j);
    }
    return s;
}

double curvature_sigma(const VectorXd& g, const VectorXd& h, double w,
                       const CostPair& cp, double epsilon) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < cp.cols(); ++j) {
        const auto c = w * cp.gamma().col(j).array() + (1.0 - w) * cp.phi().col(j).array();
        const auto d = cp.phi().col(j).array() - cp.gamma().col(j).array();
        s += (d.square() * (-c / epsilon).exp() * g.array()).sum() * h(j);
    }
    return s / epsilon;
}

TheoryConstants TheoryConstants::from(const CostPair& cp, double epsilon,
                                      Eigen::Index m, Eigen::Index n) {
    if (!(epsilon > 0)) throw InvalidInput("TheoryConstants: epsilon must be positive");
    TheoryConstants t{};
    const double c = cp.c_inf(), ct = cp.c_tilde_inf();
    t.kappa = std::exp(-6.0 * c / epsilon) / (2.0 * epsilon);
    t.tau = ct * ct * std::exp(6.0 * c / epsilon) / (2.0 * epsilon);
    if (ct > 0) {
        t.lipschitz_w = (ct * ct / epsilon) * std::exp(6.0 * c / epsilon);
        t.eta = 1.0 / t.lipschitz_w;
    } else {
        t.lipschitz_w = 0.0; // gradient in w vanishes identically
        t.eta = 0.0;
    }
    t.rho1 = (192.0 * double(m) + 216.0 * double(n) + 24.0) * (c * c / epsilon) *
             std::exp(18.0 * c / epsilon);
    return t;
}

namespace {

// Shared state for the HBCD loop in either domain. In the plain domain
// the iterate lives in the scalings g = a.exp(u/eps), h = b.exp(v/eps);
// in the log domain it lives in the potentials u, v directly.
struct HbcdState {
    bool log = false;
    VectorXd g, h; // plain domain
    VectorXd u, v; // log domain
    Eigen::ArrayXd la, lb;
};

constexpr double kEtaFloor = 1e-12;
constexpr double kEtaCap = 1e6;

} // namespace

EtiotSolution hbcd_solve(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                         const HbcdConfig& cfg) {
    check_weights(cp, a, b);
    if (!(cfg.epsilon > 0)) throw InvalidInput("hbcd: epsilon must be positive");
    if (cfg.freq < 1) throw InvalidInput("hbcd: freq must be >= 1");
    if (cfg.max_iters < 1) throw InvalidInput("hbcd: max_iters must be >= 1");
    if (!(cfg.marginal_tol >= 0)) throw InvalidInput("hbcd: negative marginal_tol");
    if (!(cfg.w_init >= 0 && cfg.w_init <= 1)) throw InvalidInput("hbcd: w_init outside [0,1]");
    if (cfg.w_max_subiters < 0) throw InvalidInput("hbcd: negative w_max_subiters");

    const Eigen::Index m = cp.rows(), n = cp.cols();
    const double eps = cfg.epsilon;
    const double subiter_tol =
        cfg.w_subiter_tol ? *cfg.w_subiter_tol : (std::max(m, n) >= 1000 ? 1e-2 : 1e-7);

    HbcdState st;
    st.la = a.array().log();
    st.lb = b.array().log();
    st.log = cfg.log_domain || wants_log_domain(eps, cp.c_inf());

    double w = cfg.w_init;
    MatrixXd C = cp.combine(w);
    MatrixXd K;
    if (!st.log) {
        K = (-C.array() / eps).exp();
        st.g = a; // placeholder until the first update
        st.h = VectorXd::Constant(n, 1.0 / double(n));
    } else {
        st.u = VectorXd::Zero(m);
        // potentials matching the uniform h = (1/n) 1 start of the plain path
        st.v = (eps * (-std::log(double(n)) - st.lb)).matrix();
    }

    auto to_log = [&]() {
        st.u = eps * (st.g.array() / a.array()).log().matrix();
        st.v = eps * (st.h.array() / b.array()).log().matrix();
        if (!st.u.allFinite() || !st.v.allFinite())
            throw SolverFailure("hbcd: scaling state not representable in either domain");
        st.log = true;
        K.resize(0, 0);
    };

    // Unnormalized plan sums at a trial w: s0 = sum pi~, s1 = sum (phi -
    // gamma) pi~, s2 = sum (phi - gamma)^2 pi~. These drive the w step
    // (s1 is dF/dw, s2/eps the curvature) and the step guard (F depends
    // on w only through eps*s0 with u, v held fixed).
    auto sums_at = [&](double wt, bool full) -> std::array<double, 3> {
        double s0 = 0, s1 = 0, s2 = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto cj =
                wt * cp.gamma().col(j).array() + (1.0 - wt) * cp.phi().col(j).array();
            Eigen::ArrayXd t;
            if (!st.log) {
                t = (-cj / eps).exp() * st.g.array() * st.h(j);
            } else {
                t = ((st.u.array() + st.v(j) - cj) / eps + st.la + st.lb(j)).exp();
            }
            s0 += t.sum();
            if (full) {
                const auto d = cp.phi().col(j).array() - cp.gamma().col(j).array();
                s1 += (d * t).sum();
                s2 += (d.square() * t).sum();
            }
        }
        return {s0, s1, s2};
    };

    const double theory_eta =
        cfg.stepsize == StepsizeRule::Theoretical ? TheoryConstants::from(cp, eps, m, n).eta
                                                  : 0.0;
    auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };

    auto run_w_phase = [&]() {
        for (int s = 0; s < cfg.w_max_subiters; ++s) {
            const auto [s0, s1, s2] = sums_at(w, true);
            const double grad = s1;
            if (cfg.stepsize == StepsizeRule::Theoretical) {
                w = clamp01(w - theory_eta * grad);
                return; // exactly one step per cycle in the analyzed regime
            }
            const double sigma = s2 / eps;
            double eta;
            if (cfg.stepsize == StepsizeRule::AdaptiveProportional) {
                eta = sigma >= 10.0 ? sigma / 20.0 : sigma / 10.0;
            } else {
                eta = sigma > 0 ? std::clamp(1.0 / sigma, kEtaFloor, kEtaCap) : kEtaCap;
            }
            double wt = clamp01(w - eta * grad);
            // Both adaptive rules are heuristics; reject any step that
            // increases the objective and halve until it does not.
            int halvings = 0;
            while (wt != w) {
                const double s0t = sums_at(wt, false)[0];
                if (s0t <= s0 * (1.0 + 1e-12) + 1e-300) break;
                if (++halvings > 40) {
                    wt = w;
                    break;
                }
                eta *= 0.5;
                wt = clamp01(w - eta * grad);
            }
            const double dw = std::abs(wt - w);
            w = wt;
            if (dw < subiter_tol) break;
        }
    };

    auto refresh_cost = [&]() {
        C = cp.combine(w);
        if (!st.log) K = (-C.array() / eps).exp();
    };

    auto residual_now = [&]() -> double {
        if (!st.log) {
            const VectorXd row = st.g.array() * (K * st.h).array();
            return (row - a).cwiseAbs().sum();
        }
        double r = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::ArrayXd e =
                (st.u(i) + st.v.array() - C.row(i).transpose().array()) / eps + st.la(i) +
                st.lb;
            r += std::abs(std::exp(logsumexp(e)) - a(i));
        }
        return r;
    };

    auto potentials = [&](VectorXd& u_out, VectorXd& v_out) {
        if (!st.log) {
            u_out = eps * (st.g.array() / a.array()).log().matrix();
            v_out = eps * (st.h.array() / b.array()).log().matrix();
        } else {
            u_out = st.u;
            v_out = st.v;
        }
    };

    EtiotSolution out;
    long it = 0;
    double resid = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;

    while (it < cfg.max_iters) {
        ++it;
        if (!st.log) {
            VectorXd Kh = K * st.h;
            if (!Kh.allFinite() || (Kh.array() <= 0).any()) {
                to_log();
                refresh_cost();
            } else {
                st.g = a.array() / Kh.array();
                if (cfg.normalize_u) {
                    // shift u by -a'u, i.e. scale g so that a'log(g/a) = 0
                    const double s = (a.array() * (st.g.array() / a.array()).log()).sum();
                    st.g *= std::exp(-s);
                }
                VectorXd Ktg = K.transpose() * st.g;
                if (!st.g.allFinite() || !Ktg.allFinite() || (Ktg.array() <= 0).any()) {
                    to_log();
                    refresh_cost();
                } else {
                    st.h = b.array() / Ktg.array();
                    if (!st.h.allFinite()) {
                        to_log();
                        refresh_cost();
                    }
                }
            }
        }
        if (st.log) {
            for (Eigen::Index i = 0; i < m; ++i) {
                const Eigen::ArrayXd e =
                    (st.v.array() - C.row(i).transpose().array()) / eps + st.lb;
                st.u(i) = -eps * logsumexp(e);
            }
            if (cfg.normalize_u) st.u.array() -= a.dot(st.u);
            for (Eigen::Index j = 0; j < n; ++j) {
                const Eigen::ArrayXd e = (st.u.array() - C.col(j).array()) / eps + st.la;
                st.v(j) = -eps * logsumexp(e);
            }
            if (!st.u.allFinite() || !st.v.allFinite()) {
                Eigen::Index bad = 0;
                for (; bad < m && std::isfinite(st.u(bad)); ++bad) {}
                throw SolverFailure("hbcd: non-finite potential at iteration " +
                                    std::to_string(it) + " (u[" + std::to_string(bad) +
                                    "])");
            }
        }

        const bool checkpoint = (it % cfg.freq == 0) || it == cfg.max_iters;
        if (!checkpoint) continue;

        // Step w first, then measure the residual against the refreshed
        // kernel: a large w move spoils the marginals, so passing the
        // tolerance here certifies joint stationarity, not just an inner
        // Sinkhorn fixed point at a stale w.
        run_w_phase();
        refresh_cost();
        resid = residual_now();
        if (!std::isfinite(resid))
            throw SolverFailure("hbcd: non-finite marginal residual at iteration " +
                                std::to_string(it));
        if (resid < cfg.marginal_tol) converged = true;
        if (cfg.observer || cfg.record_dual_trace) {
            VectorXd uu, vv;
            potentials(uu, vv);
            const double F = dual_objective(uu, vv, w, cp, a, b, eps);
            if (cfg.record_dual_trace) out.dual_trace.push_back(F);
            if (cfg.observer)
                cfg.observer({it, std::move(uu), std::move(vv), w, F, resid});
        }
        if (converged) break;
    }

    potentials(out.u, out.v);
    out.w = w;
    out.iterations = it;
    out.converged = converged;
    out.final_residual = resid;
    out.used_log_domain = st.log;

    out.plan.matrix.resize(m, n);
    if (!st.log) {
        out.plan.matrix = st.g.asDiagonal() * K * st.h.asDiagonal();
    } else {
        for (Eigen::Index j = 0; j < n; ++j)
            out.plan.matrix.col(j) =
                ((st.u.array() + st.v(j) - C.col(j).array()) / eps + st.la + st.lb(j))
                    .exp()
                    .matrix();
    }
    if (!out.plan.matrix.allFinite())
        throw SolverFailure("hbcd: non-finite transport plan");
    out.transport_value = (C.array() * out.plan.matrix.array()).sum();

    // KL(pi | a b') via log(pi_ij/(a_i b_j)) = (u_i + v_j - C_ij)/eps.
    double kl = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        kl += (out.plan.matrix.col(j).array() *
               ((out.u.array() + out.v(j) - C.col(j).array()) / eps))
                  .sum();
    kl += 1.0 - out.plan.matrix.sum();
    out.full_objective = out.transport_value + eps * kl;
    return out;
}

SinkhornResult sinkhorn_fixed_cost(const MatrixXd& cost, const VectorXd& a,
                                   const VectorXd& b, double epsilon,
                                   double marginal_tol, long max_iters, int check_freq) {
    if (a.size() != cost.rows() || b.size() != cost.cols())
        throw InvalidInput("sinkhorn: weight sizes do not match cost");
    if ((a.array() <= 0).any() || (b.array() <= 0).any())
        throw InvalidInput("sinkhorn: weights must be positive");
    if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
        throw InvalidInput("sinkhorn: weights must sum to 1");
    if (!(epsilon > 0)) throw InvalidInput("sinkhorn: epsilon must be positive");
    if (check_freq < 1) throw InvalidInput("sinkhorn: check_freq must be >= 1");
    if (!cost.allFinite()) throw InvalidInput("sinkhorn: non-finite cost");

    const Eigen::Index m = cost.rows(), n = cost.cols();
    const Eigen::ArrayXd la = a.array().log(), lb = b.array().log();
    bool log_mode = wants_log_domain(epsilon, cost.cwiseAbs().maxCoeff());

    MatrixXd K;
    VectorXd g = a, h, u, v;
    if (!log_mode) {
        K = (-cost.array() / epsilon).exp();
        h = VectorXd::Constant(n, 1.0 / double(n));
    } else {
        u = VectorXd::Zero(m);
        v = epsilon * (-std::log(double(n)) - lb.matrix().array()).matrix();
    }

    auto to_log = [&]() {
        u = epsilon * (g.array() / a.array()).log().matrix();
        v = epsilon * (h.array() / b.array()).log().matrix();
        if (!u.allFinite() || !v.allFinite())
            throw SolverFailure("sinkhorn: scaling state not representable");
        log_mode = true;
        K.resize(0, 0);
    };

    SinkhornResult out;
    long it = 0;
    double resid = std::numeric_limits<double>::quiet_NaN();
    while (it < max_iters) {
        ++it;
        if (!log_mode) {
            VectorXd Kh = K * h;
            if (!Kh.allFinite() || (Kh.array() <= 0).any()) {
                to_log();
            } else {
                g = a.array() / Kh.array();
                VectorXd Ktg = K.transpose() * g;
                if (!g.allFinite() || !Ktg.allFinite() || (Ktg.array() <= 0).any())
                    to_log();
                else
                    h = b.array() / Ktg.array();
            }
        }
        if (log_mode) {
            for (Eigen::Index i = 0; i < m; ++i)
                u(i) = -epsilon * logsumexp(
                                      (v.array() - cost.row(i).transpose().array()) /
                                          epsilon +
                                      lb);
            for (Eigen::Index j = 0; j < n; ++j)
                v(j) = -epsilon *
                       logsumexp((u.array() - cost.col(j).array()) / epsilon + la);
            if (!u.allFinite() || !v.allFinite())
                throw SolverFailure("sinkhorn: non-finite potential at iteration " +
                                    std::to_string(it));
        }
        if (it % check_freq == 0 || it == max_iters) {
            if (!log_mode) {
                resid = (g.array() * (K * h).array() - a.array()).abs().sum();
            } else {
                resid = 0.0;
                for (Eigen::Index i = 0; i < m; ++i) {
                    const Eigen::ArrayXd e =
                        (u(i) + v.array() - cost.row(i).transpose().array()) / epsilon +
                        la(i) + lb;
                    resid += std::abs(std::exp(logsumexp(e)) - a(i));
                }
            }
            if (!std::isfinite(resid))
                throw SolverFailure("sinkhorn: non-finite residual at iteration " +
                                    std::to_string(it));
            if (resid < marginal_tol) {
                out.converged = true;
                break;
            }
        }
    }

    if (!log_mode) {
        out.u = epsilon * (g.array() / a.array()).log().matrix();
        out.v = epsilon * (h.array() / b.array()).log().matrix();
        out.plan.matrix = g.asDiagonal() * K * h.asDiagonal();
    } else {
        out.u = u;
        out.v = v;
        out.plan.matrix.resize(m, n);
        for (Eigen::Index j = 0; j < n; ++j)
            out.plan.matrix.col(j) =
                ((u.array() + v(j) - cost.col(j).array()) / epsilon + la + lb(j))
                    .exp()
                    .matrix();
    }
    if (!out.plan.matrix.allFinite())
        throw SolverFailure("sinkhorn: non-finite transport plan");
    out.value = (cost.array() * out.plan.matrix.array()).sum();
    out.iterations = it;
    out.final_residual = resid;
    out.used_log_domain = log_mode;
    return out;
}

EtaotResult etaot_solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                        double omega, double epsilon, double marginal_tol,
                        long max_iters, bool unscaled_kl) {
    if (!(omega >= 0)) throw InvalidInput("etaot: omega must be >= 0");
    const CostPair cp = build_cost_pair(alpha, beta, 2.0);
    const MatrixXd cost = cp.gamma() + omega * cp.phi();
    const double reg = unscaled_kl ? 1.0 : epsilon;
    auto s = sinkhorn_fixed_cost(cost, alpha.weights(), beta.weights(), reg,
                                 marginal_tol, max_iters);
    EtaotResult out;
    out.plan = std::move(s.plan);
    out.value = s.value;
    out.converged = s.converged;
    return out;
}

} // namespace tiot
