#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tiot/cost.hpp"
#include "tiot/transport_plan.hpp"

namespace tiot {

enum class StepsizeRule {
    // Fixed eta = (eps/|C~|_inf^2) exp(-6|C|_inf/eps); one projected
    // gradient step on w per cycle. This is the setting the convergence
    // guarantees are stated for.
    Theoretical,
    // eta = sigma/20 if sigma >= 10 else sigma/10, sigma the local
    // curvature estimate. Grows with curvature, so the halving guard in
    // the w phase is what keeps it safe.
    AdaptiveProportional,
    // eta = 1/sigma clamped to [1e-12, 1e6]. Default.
    AdaptiveInverse,
};

struct HbcdConfig {
    double epsilon = 0.1;
    double marginal_tol = 0.005; // L1 residual |g.(Kh) - a|_1
    int freq = 10;               // w step + termination check cadence
    long max_iters = 100000;
    StepsizeRule stepsize = StepsizeRule::AdaptiveInverse;
    int w_max_subiters = 50;
    // Stop w subiterations when |delta w| falls below this; unset means
    // 1e-7 for max(m,n) < 1000 and 1e-2 otherwise.
    std::optional<double> w_subiter_tol;
    double w_init = 0.5;
    bool normalize_u = false; // enforce a'u = 0 after each u update
    bool log_domain = false;  // force log-domain; auto-engages on underflow risk
    bool record_dual_trace = false;

    // Called at every termination checkpoint with the completed iterate;
    // meant for small instances (costs a full objective evaluation).
    struct Checkpoint {
        long iteration;
        VectorXd u, v;
        double w;
        double objective;
        double residual;
    };
    std::function<void(const Checkpoint&)> observer;
};

struct EtiotSolution {
    TransportPlan plan;
    double w = 0.5;
    double transport_value = 0.0; // <C(w), plan>
    double full_objective = 0.0;  // transport_value + eps * KL(plan | a b')
    VectorXd u, v;                // final dual potentials
    long iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    bool used_log_domain = false;
    std::vector<double> dual_trace; // F per checkpoint if requested
};

// Dual objective of the entropic problem,
//   F(u,v,w) = -u'a - v'b + eps * sum_ij exp((u_i+v_j-c_ij(w))/eps) a_i b_j - eps.
// Switches to a log-sum-exp evaluation when the exponent gets large.
double dual_objective(const VectorXd& u, const VectorXd& v, double w,
                      const CostPair& cp, const VectorXd& a, const VectorXd& b,
                      double epsilon);

// d/dw F at scalings g = a.exp(u/eps), h = b.exp(v/eps):
//   sum_ij (phi_ij - gamma_ij) g_i exp(-c_ij(w)/eps) h_j.
double grad_w(const VectorXd& g, const VectorXd& h, double w, const CostPair& cp,
              double epsilon);

// Local curvature estimate sigma = (1/eps) sum_ij (phi-gamma)^2 g_i K_ij h_j.
double curvature_sigma(const VectorXd& g, const VectorXd& h, double w,
                       const CostPair& cp, double epsilon);

struct TheoryConstants {
    double eta;     // theoretical stepsize, = 1/lipschitz_w
    double kappa;   // exp(-6|C|/eps) / (2 eps)
    double tau;     // |C~|^2 exp(6|C|/eps) / (2 eps)
    double lipschitz_w;
    double rho1;    // (192m + 216n + 24) (|C|^2/eps) exp(18|C|/eps)

    static TheoryConstants from(const CostPair& cp, double epsilon,
                                Eigen::Index m, Eigen::Index n);
};

// Hybrid block coordinate descent on the entropic max-min dual: exact
// Sinkhorn-style u and v block minimizations plus projected gradient
// steps on the mixing weight w.
EtiotSolution hbcd_solve(const CostPair& cp, const VectorXd& a, const VectorXd& b,
                         const HbcdConfig& cfg = {});

struct SinkhornResult {
    TransportPlan plan;
    double value = 0.0; // <cost, plan>
    VectorXd u, v;
    long iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    bool used_log_domain = false;
};

// Plain Sinkhorn with a fixed cost matrix (the w-free baseline).
SinkhornResult sinkhorn_fixed_cost(const MatrixXd& cost, const VectorXd& a,
                                   const VectorXd& b, double epsilon,
                                   double marginal_tol = 0.005,
                                   long max_iters = 100000, int check_freq = 10);

// Entropic time-adaptive baseline: Sinkhorn on the additive cost
//   c_ij(omega) = |x_i - y_j|_2^2 + omega (t_i - s_j)^2
// with regularization eps * KL(pi | a b'). Set unscaled_kl to drop the
// eps factor on the KL term (equivalent to regularization strength 1).
struct EtaotResult {
    TransportPlan plan;
    double value = 0.0;
    bool converged = false;
};
EtaotResult etaot_solve(const DiscreteMeasure& alpha, const DiscreteMeasure& beta,
                        double omega, double epsilon, double marginal_tol = 0.005,
                        long max_iters = 100000, bool unscaled_kl = false);

} // namespace tiot
