#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tiot/cost.hpp"
#include "tiot/errors.hpp"
#include "tiot/time_series.hpp"

#include "oracles.hpp"

using namespace tiot;

TEST_CASE("time series construction and validation") {
    VectorXd v(3);
    v << 1.0, 2.0, 3.0;
    const TimeSeries ts = TimeSeries::univariate(v);
    CHECK(ts.length() == 3);
    CHECK(ts.dim() == 1);
    CHECK(ts.timestamps()(0) == doctest::Approx(1.0));
    CHECK(ts.timestamps()(2) == doctest::Approx(3.0));
    CHECK(!ts.label().has_value());

    VectorXd t2(2);
    t2 << 0.0, 1.0;
    CHECK_THROWS_AS(TimeSeries::univariate(v, t2), InvalidInput);
    CHECK_THROWS_AS(TimeSeries::univariate(VectorXd()), InvalidInput);
    VectorXd bad = v;
    bad(1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(TimeSeries::univariate(bad), InvalidInput);

    const TimeSeries labeled = TimeSeries::univariate(v, 7);
    CHECK(labeled.label() == 7);
}

TEST_CASE("z-score normalization matches the frozen 3-point value") {
    VectorXd v(3);
    v << 1.0, 2.0, 3.0;
    const TimeSeries z = zscore_normalize(TimeSeries::univariate(v));
    CHECK(z.values()(0, 0) == doctest::Approx(-1.224744871391589).epsilon(1e-12));
    CHECK(z.values()(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(z.values()(0, 2) == doctest::Approx(1.224744871391589).epsilon(1e-12));
    // timestamps 1,2,3 get the same treatment
    CHECK(z.timestamps()(0) == doctest::Approx(-1.224744871391589).epsilon(1e-12));
    CHECK(z.timestamps()(2) == doctest::Approx(1.224744871391589).epsilon(1e-12));
}

TEST_CASE("z-score is idempotent and flattens constant series") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 9.0);
    VectorXd v(40);
    for (int i = 0; i < 40; ++i) v(i) = u(rng);
    const TimeSeries once = zscore_normalize(TimeSeries::univariate(v));
    const TimeSeries twice = zscore_normalize(once);
    CHECK((once.values() - twice.values()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(once.values().row(0).mean() == doctest::Approx(0.0).epsilon(1e-12));
    const double sd = std::sqrt(once.values().row(0).array().square().mean());
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));

    const TimeSeries flat =
        zscore_normalize(TimeSeries::univariate(VectorXd::Constant(5, 3.7)));
    CHECK(flat.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("euclidean distance") {
    VectorXd x(2), y(2);
    x << 0.0, 0.0;
    y << 3.0, 4.0;
    CHECK(euclidean_dist(TimeSeries::univariate(x), TimeSeries::univariate(y)) ==
          doctest::Approx(5.0).epsilon(1e-15));
    VectorXd z(3);
    z << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(euclidean_dist(TimeSeries::univariate(x), TimeSeries::univariate(z)),
                    InvalidInput);
    CHECK(euclidean_dist(TimeSeries::univariate(x), TimeSeries::univariate(x)) == 0.0);
}

TEST_CASE("discrete measure weight validation") {
    MatrixXd pts(1, 2);
    pts << 0.0, 1.0;
    VectorXd t(2);
    t << 0.0, 1.0;
    VectorXd good(2), neg(2), off(2);
    good << 0.5, 0.5;
    neg << 1.5, -0.5;
    off << 0.6, 0.6;
    CHECK_NOTHROW(DiscreteMeasure(pts, t, good));
    CHECK_THROWS_AS(DiscreteMeasure(pts, t, neg), InvalidInput);
    CHECK_THROWS_AS(DiscreteMeasure(pts, t, off), InvalidInput);

    // near-1 sums are renormalized to exactly 1
    VectorXd close(2);
    close << 0.5 + 4e-10, 0.5;
    const DiscreteMeasure m(pts, t, close);
    CHECK(m.weights().sum() == 1.0);
}

TEST_CASE("lifting a series to a measure") {
    VectorXd v(4);
    v << 1.0, 2.0, 3.0, 4.0;
    const auto m = lift_to_measure(TimeSeries::univariate(v));
    CHECK(m.size() == 4);
    CHECK(m.weights()(2) == doctest::Approx(0.25).epsilon(1e-15));

    VectorXd w(4);
    w << 0.1, 0.2, 0.3, 0.4;
    const auto mw = lift_to_measure(TimeSeries::univariate(v), w);
    CHECK(mw.weights()(3) == doctest::Approx(0.4).epsilon(1e-12));
    VectorXd short_w(3);
    short_w << 0.3, 0.3, 0.4;
    CHECK_THROWS_AS(lift_to_measure(TimeSeries::univariate(v), short_w), InvalidInput);
}

TEST_CASE("cost matrices of the worked 2-point instances") {
    const auto [a1, b1] = oracle::example_A();
    const CostPair ca = build_cost_pair(a1, b1, 2.0);
    CHECK(ca.gamma().isApproxToConstant(0.25, 1e-15));
    CHECK(ca.phi()(0, 0) == 0.0);
    CHECK(ca.phi()(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ca.phi()(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ca.phi()(1, 1) == 0.0);

    const auto [a2, b2] = oracle::example_B();
    const CostPair cb = build_cost_pair(a2, b2, 2.0);
    CHECK(cb.gamma()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.gamma()(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cb.gamma()(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.phi()(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.phi()(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.c_inf() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.c_tilde_inf() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("c_inf equals the brute-force grid maximum of |C(w)|_inf") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        const auto alpha = oracle::random_measure(seed, 5, 2, false);
        const auto beta = oracle::random_measure(seed + 100, 4, 2, false);
        const CostPair cp = build_cost_pair(alpha, beta, 2.0);
        double grid_max = 0.0;
        for (int k = 0; k <= 100; ++k)
            grid_max = std::max(grid_max,
                                cp.combine(double(k) / 100.0).cwiseAbs().maxCoeff());
        CHECK(cp.c_inf() == doctest::Approx(grid_max).epsilon(1e-12));
    }
}

TEST_CASE("combine validates w and interpolates linearly") {
    const auto [a, b] = oracle::example_B();
    const CostPair cp = build_cost_pair(a, b, 2.0);
    CHECK_THROWS_AS(cp.combine(-0.1), InvalidInput);
    CHECK_THROWS_AS(cp.combine(1.1), InvalidInput);
    const MatrixXd mid = cp.combine(0.5);
    CHECK((mid - 0.5 * (cp.gamma() + cp.phi())).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((cp.combine(1.0) - cp.gamma()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((cp.combine(0.0) - cp.phi()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("order-p ground costs") {
    VectorXd xa(1), xb(1), ta(1), tb(1), w1(1);
    xa << 2.0;
    xb << -1.0;
    ta << 0.0;
    tb << 0.5;
    w1 << 1.0;
    MatrixXd pa = xa.transpose(), pb = xb.transpose();
    const DiscreteMeasure ma(pa, ta, w1), mb(pb, tb, w1);
    const CostPair p1 = build_cost_pair(ma, mb, 1.0);
    CHECK(p1.gamma()(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(p1.phi()(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    const CostPair p3 = build_cost_pair(ma, mb, 3.0);
    CHECK(p3.gamma()(0, 0) == doctest::Approx(27.0).epsilon(1e-12));
    CHECK(p3.phi()(0, 0) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(build_cost_pair(ma, mb, 0.5), InvalidInput);
}

TEST_CASE("multivariate squared distances accumulate over dimensions") {
    MatrixXd pa(2, 1), pb(2, 1);
    pa << 1.0, 2.0;
    pb << 4.0, 6.0;
    VectorXd t(1), w(1);
    t << 0.0;
    w << 1.0;
    const CostPair cp =
        build_cost_pair(DiscreteMeasure(pa, t, w), DiscreteMeasure(pb, t, w), 2.0);
    CHECK(cp.gamma()(0, 0) == doctest::Approx(25.0).epsilon(1e-12)); // 9 + 16
}

TEST_CASE("cost pair is symmetric under swapping the measures") {
    const auto alpha = oracle::random_measure(21, 4, 1, false);
    const auto beta = oracle::random_measure(22, 6, 1, false);
    const CostPair ab = build_cost_pair(alpha, beta, 2.0);
    const CostPair ba = build_cost_pair(beta, alpha, 2.0);
    CHECK((ab.gamma() - ba.gamma().transpose()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((ab.phi() - ba.phi().transpose()).cwiseAbs().maxCoeff() < 1e-15);
}
