#include "tiot/ot_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tiot/errors.hpp"

namespace tiot {

namespace {

void check_marginals(const MatrixXd& cost, const VectorXd& a, const VectorXd& b) {
    if (a.size() != cost.rows() || b.size() != cost.cols())
        throw InvalidInput("solve_discrete_ot: marginal sizes do not match cost");
    if ((a.array() <= 0).any() || (b.array() <= 0).any())
        throw InvalidInput("solve_discrete_ot: marginals must be positive");
    if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
        throw InvalidInput("solve_discrete_ot: marginals must sum to 1");
    if (!cost.allFinite())
        throw InvalidInput("solve_discrete_ot: non-finite cost");
}

} // namespace

// Transportation simplex over the bipartite graph rows x cols. The basis
// is a spanning tree of m+n nodes (m+n-1 cells). Rather than patching
// flows and potentials incrementally, both are rebuilt from the tree
// every pivot: O(m+n) next to the O(mn) pricing scan, and it keeps
// marginals exact to rounding no matter how many pivots ran.
OtSolution solve_discrete_ot(const MatrixXd& cost, const VectorXd& a_in,
                             const VectorXd& b_in, const OtSimplexOptions& opts) {
    check_marginals(cost, a_in, b_in);
    VectorXd a = a_in / a_in.sum();
    VectorXd b = b_in / b_in.sum();
    const int m = int(cost.rows()), n = int(cost.cols());
    const int N = m + n;

    // Northwest-corner starting basis: walk the grid consuming whichever
    // marginal runs out, advancing one index per step. Exactly m+n-1
    // cells and always a spanning tree.
    std::vector<int> bi, bj; // basis cell (bi[k], bj[k])
    bi.reserve(N - 1);
    bj.reserve(N - 1);
    {
        int i = 0, j = 0;
        double ar = a[0], br = b[0];
        while (true) {
            bi.push_back(i);
            bj.push_back(j);
            if (i == m - 1 && j == n - 1) break;
            const double t = std::min(ar, br);
            ar -= t;
            br -= t;
            if ((ar <= br && i < m - 1) || j == n - 1) {
                ++i;
                ar = a[i];
            } else {
                ++j;
                br = b[j];
            }
        }
    }

    // Per-pivot scratch, rebuilt from the basis each round.
    std::vector<std::vector<int>> adj(N); // node -> incident basis cells
    std::vector<int> parent(N), pcell(N), depth(N), order(N), deg(N);
    std::vector<double> pot(N), flow(N - 1), resid(N);

    auto rebuild = [&]() {
        for (auto& v : adj) v.clear();
        for (int k = 0; k < N - 1; ++k) {
            adj[bi[k]].push_back(k);
            adj[m + bj[k]].push_back(k);
        }
        // BFS from node 0 fixes parents, depths, and potentials
        // (u_i + v_j = c_ij on basic cells, u_0 = 0).
        std::fill(parent.begin(), parent.end(), -2);
        parent[0] = -1;
        pcell[0] = -1;
        depth[0] = 0;
        pot[0] = 0.0;
        int head = 0, tail = 0;
        order[tail++] = 0;
        while (head < tail) {
            const int u = order[head++];
            for (int k : adj[u]) {
                const int other = (u == bi[k]) ? m + bj[k] : bi[k];
                if (parent[other] != -2) continue;
                parent[other] = u;
                pcell[other] = k;
                depth[other] = depth[u] + 1;
                pot[other] = cost(bi[k], bj[k]) - pot[u];
                order[tail++] = other;
            }
        }
        if (tail != N)
            throw SolverFailure("ot simplex: basis lost connectivity");
        // Leaf stripping recovers the unique flows carried by the tree.
        for (int u = 0; u < N; ++u) {
            deg[u] = int(adj[u].size());
            resid[u] = (u < m) ? a[u] : b[u - m];
        }
        std::vector<int> stack;
        std::vector<char> done(N - 1, 0);
        for (int u = 0; u < N; ++u)
            if (deg[u] == 1) stack.push_back(u);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            if (deg[u] != 1) continue; // root leftovers
            int cell = -1;
            for (int k : adj[u])
                if (!done[k]) {
                    cell = k;
                    break;
                }
            if (cell < 0) continue;
            flow[cell] = resid[u];
            done[cell] = 1;
            const int other = (u == bi[cell]) ? m + bj[cell] : bi[cell];
            resid[other] -= resid[u];
            resid[u] = 0.0;
            if (--deg[other] == 1) stack.push_back(other);
            --deg[u];
        }
    };

    const double tol = 1e-11 * (1.0 + cost.cwiseAbs().maxCoeff());
    long max_pivots = opts.max_pivots > 0 ? opts.max_pivots : 50L * N + 10000;
    bool bland = false;
    long degen_streak = 0;
    long pivots = 0;

    std::vector<int> cells_a, cells_b;
    while (true) {
        if (pivots > max_pivots)
            throw SolverFailure("ot simplex: pivot budget exhausted (" +
                                std::to_string(max_pivots) + "), cycling suspected");
        if (opts.deadline && (pivots & 63) == 0 &&
            std::chrono::steady_clock::now() > *opts.deadline)
            throw SolverTimeout("ot simplex: deadline exceeded");
        rebuild();

        // Pricing: entering cell with most negative reduced cost
        // (Dantzig), or the first one in index order once Bland mode is
        // on after a long degenerate streak.
        int ei = -1, ej = -1;
        if (!bland) {
            double best = -tol;
            for (int j = 0; j < n; ++j) {
                const double vj = pot[m + j];
                for (int i = 0; i < m; ++i) {
                    const double rc = cost(i, j) - pot[i] - vj;
                    if (rc < best) {
                        best = rc;
                        ei = i;
                        ej = j;
                    }
                }
            }
        } else {
            for (int i = 0; i < m && ei < 0; ++i)
                for (int j = 0; j < n; ++j) {
                    const double rc = cost(i, j) - pot[i] - pot[m + j];
                    if (rc < -tol) {
                        ei = i;
                        ej = j;
                        break;
                    }
                }
        }
        if (ei < 0) break; // optimal

        // The entering cell closes one cycle with the tree path between
        // its endpoints. Arcs alternate -,+ walking up from either end.
        cells_a.clear();
        cells_b.clear();
        int au = ei, bu = m + ej;
        while (depth[au] > depth[bu]) {
            cells_a.push_back(pcell[au]);
            au = parent[au];
        }
        while (depth[bu] > depth[au]) {
            cells_b.push_back(pcell[bu]);
            bu = parent[bu];
        }
        while (au != bu) {
            cells_a.push_back(pcell[au]);
            au = parent[au];
            cells_b.push_back(pcell[bu]);
            bu = parent[bu];
        }

        double theta = std::numeric_limits<double>::infinity();
        int leave = -1;
        auto consider = [&](int cell) {
            const double f = flow[cell];
            const long id = long(bi[cell]) * n + bj[cell];
            if (f < theta - 1e-15 ||
                (f <= theta + 1e-15 &&
                 (leave < 0 || id < long(bi[leave]) * n + bj[leave]))) {
                theta = std::min(theta, f);
                leave = cell;
            }
        };
        for (size_t k = 0; k < cells_a.size(); k += 2) consider(cells_a[k]);
        for (size_t k = 0; k < cells_b.size(); k += 2) consider(cells_b[k]);
        if (leave < 0)
            throw SolverFailure("ot simplex: no leaving arc (cycle sign error)");

        if (theta <= 1e-15) {
            if (++degen_streak > 5L * N) bland = true;
        } else {
            degen_streak = 0;
        }
        bi[leave] = ei;
        bj[leave] = ej;
        ++pivots;
    }

    OtSolution out;
    out.plan.matrix = MatrixXd::Zero(m, n);
    for (int k = 0; k < N - 1; ++k)
        out.plan.matrix(bi[k], bj[k]) += std::max(flow[k], 0.0);
    out.value = 0.0;
    for (int k = 0; k < N - 1; ++k)
        out.value += std::max(flow[k], 0.0) * cost(bi[k], bj[k]);
    out.u = Eigen::Map<VectorXd>(pot.data(), m);
    out.v = Eigen::Map<VectorXd>(pot.data() + m, n);
    out.pivots = pivots;
    return out;
}

} // namespace tiot
