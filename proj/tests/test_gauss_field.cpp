#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "siltlab/errors.hpp"
#include "siltlab/gauss_field.hpp"
#include "siltlab/green.hpp"
#include "siltlab/rng.hpp"
#include "siltlab/stats.hpp"

using namespace siltlab;

TEST_SUITE("gauss_field") {

TEST_CASE("sampler covariance is exact by construction") {
    struct Cfg {
        int d, N;
        double lambda;
    };
    for (const Cfg& c : {Cfg{1, 4, 1.0}, Cfg{1, 5, 0.7}, Cfg{2, 3, 0.3},
                         Cfg{3, 2, 1.0}}) {
        GreenOperator op(c.d, c.N, c.lambda);
        SpectralSampler sampler(op);
        const int64_t M = op.size();
        REQUIRE(sampler.size() == M);
        const std::vector<double>& B = sampler.basis_matrix();
        const std::vector<double> G = op.dense_matrix();
        for (int64_t i = 0; i < M; ++i) {
            for (int64_t j = 0; j < M; ++j) {
                long double acc = 0.0L;
                for (int64_t k = 0; k < M; ++k)
                    acc += (long double)B[i * M + k] * B[j * M + k];
                CHECK(std::abs(double(acc) - G[i * M + j]) <=
                      1e-12 * (1.0 + std::abs(G[i * M + j])));
            }
        }
    }
}

TEST_CASE("N=1 field is Normal(0, 1/lambda)") {
    const double lambda = 0.7;
    GreenOperator op(1, 1, lambda);
    SpectralSampler sampler(op);
    const int64_t n = 100000;
    MeanAccumulator mean, var;
    for (int64_t i = 0; i < n; ++i) {
        RngStream rng = RngStream::for_sample(42, i);
        GaussianField f = sampler.sample(rng);
        REQUIRE(f.values.size() == 1);
        mean.add(f.values[0]);
        var.add(f.values[0] * f.values[0]);
    }
    const double sigma2 = 1.0 / lambda;
    CHECK(std::abs(mean.mean()) <= 4.0 * std::sqrt(sigma2 / n));
    CHECK(std::abs(var.mean() - sigma2) <=
          4.0 * sigma2 * std::sqrt(2.0 / n));
}

TEST_CASE("empirical covariance matches spectral G on N=4, d=1") {
    const double lambda = 1.0;
    GreenOperator op(1, 4, lambda);
    SpectralSampler sampler(op);
    const int64_t M = op.size(), n = 1000000;
    const std::vector<double> G = op.dense_matrix();
    std::vector<MeanAccumulator> mean(M);
    std::vector<MeanAccumulator> cov(M * M);
    for (int64_t i = 0; i < n; ++i) {
        RngStream rng = RngStream::for_sample(7, i);
        GaussianField f = sampler.sample(rng);
        for (int64_t x = 0; x < M; ++x) {
            mean[x].add(f.values[x]);
            for (int64_t y = 0; y < M; ++y)
                cov[x * M + y].add(f.values[x] * f.values[y]);
        }
    }
    for (int64_t x = 0; x < M; ++x) {
        CHECK(std::abs(mean[x].mean()) <=
              4.0 * std::sqrt(G[x * M + x] / n));
        for (int64_t y = 0; y < M; ++y) {
            const double gxy = G[x * M + y];
            const double se = std::sqrt(
                (G[x * M + x] * G[y * M + y] + gxy * gxy) / n);
            CHECK(std::abs(cov[x * M + y].mean() - gxy) <= 4.0 * se);
        }
    }
}

TEST_CASE("fixed seed reproduces the field; samples differ") {
    GreenOperator op(2, 3, 0.5);
    SpectralSampler sampler(op);
    RngStream a = RngStream::for_sample(11, 0);
    RngStream b = RngStream::for_sample(11, 0);
    RngStream c = RngStream::for_sample(11, 1);
    GaussianField fa = sampler.sample(a);
    GaussianField fb = sampler.sample(b);
    GaussianField fc = sampler.sample(c);
    CHECK(fa.values == fb.values);
    CHECK(fa.values != fc.values);
    CHECK(fa.d == 2);
    CHECK(fa.N == 3);
    CHECK(fa.lambda == 0.5);
}

TEST_CASE("norm_2p closed forms and brute-force agreement") {
    // constant field c on N^d sites -> |c| N^{d/2p}
    GaussianField f;
    f.d = 2;
    f.N = 3;
    f.values.assign(9, -1.7);
    const double p = 2.0;
    CHECK(norm_2p(f, p) ==
          doctest::Approx(1.7 * std::pow(9.0, 1.0 / (2.0 * p)))
              .epsilon(1e-14));
    // single nonzero entry -> |v|
    std::vector<double> g(12, 0.0);
    g[5] = -2.25;
    CHECK(norm_2p(g, 1.5) == doctest::Approx(2.25).epsilon(1e-14));
    // random field vs direct power sum
    RngStream rng = RngStream::seeded(3);
    std::vector<double> h(20);
    for (auto& v : h) v = 2.0 * rng.uniform01() - 1.0;
    for (double pp : {1.5, 2.0, 3.0}) {
        long double acc = 0.0L;
        for (double v : h) acc += std::pow(std::abs(v), 2.0 * pp);
        const double want = double(std::pow(acc, 1.0L / (2.0L * (long double)pp)));
        CHECK(norm_2p(h, pp) == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK_THROWS_AS(norm_2p(g, 1.0), ConfigError);
    CHECK_THROWS_AS(norm_2p(g, 0.5), ConfigError);
}

TEST_CASE("shift identity holds per sample") {
    // N_{2p}(Z + s) <= N_{2p}(Z) + s N^{d/2p}, exact triangle inequality
    GreenOperator op(2, 3, 0.4);
    SpectralSampler sampler(op);
    for (double p : {1.5, 2.0, 3.0}) {
        for (double s : {0.5, 2.0}) {
            for (int64_t i = 0; i < 200; ++i) {
                RngStream rng = RngStream::for_sample(100 + int(p * 10), i);
                GaussianField f = sampler.sample(rng);
                const double base = norm_2p(f, p);
                GaussianField shifted = f;
                for (auto& v : shifted.values) v += s;
                const double bound =
                    base + s * std::pow(double(op.size()), 1.0 / (2.0 * p));
                CHECK(norm_2p(shifted, p) <= bound * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("eisenbaum: F == 1 gives both sides 1") {
    GreenOperator op(1, 3, 1.0);
    // indicator with threshold 0 is identically one
    const Functional f = Functional::norm_indicator(2.0, 0.0);
    const EisenbaumReport rep =
        eisenbaum_check(op, 1.0, 1.0, f, 50000, 2024);
    CHECK(rep.lhs == 1.0);
    CHECK(rep.se_lhs == 0.0);
    CHECK(std::abs(rep.rhs - 1.0) <= 4.0 * rep.se_rhs);
    CHECK(rep.functional == std::string("norm_indicator"));
}

TEST_CASE("eisenbaum closed form at N=1: clipped linear") {
    // lhs = E[tau] + 0.5 E[(Z_0+s)^2] = 1/lambda + 0.5 (1/lambda + s^2)
    const double lambda = 1.0, s = 1.0;
    GreenOperator op(1, 1, lambda);
    const Functional f = Functional::clipped_linear(1e6);
    const EisenbaumReport rep =
        eisenbaum_check(op, lambda, s, f, 200000, 515);
    const double analytic = 1.0 / lambda + 0.5 * (1.0 / lambda + s * s);
    CHECK(std::abs(rep.lhs - analytic) <= 4.0 * rep.se_lhs);
    CHECK(std::abs(rep.rhs - analytic) <= 4.0 * rep.se_rhs);
    CHECK(rep.within(4.0));
    CHECK(rep.clip_bound == 1e6);
    // quadratic functional also balances
    const EisenbaumReport rq = eisenbaum_check(
        op, lambda, s, Functional::clipped_quadratic(1e9), 200000, 516);
    CHECK(rq.within(4.0));
}

TEST_CASE("eisenbaum indicator cell with pilot threshold") {
    const double lambda = 1.0, s = 1.0, p = 2.0;
    GreenOperator op(1, 3, lambda);
    const double u =
        pilot_norm_quantile(op, lambda, s, p, 0.2, 4000, 99);
    CHECK(u > 0.0);
    // pilot is deterministic
    CHECK(u == pilot_norm_quantile(op, lambda, s, p, 0.2, 4000, 99));
    const EisenbaumReport rep = eisenbaum_check(
        op, lambda, s, Functional::norm_indicator(p, u), 200000, 890);
    CHECK(rep.within(4.0));
    // threshold at the 20th percentile puts the indicator mean near 0.8
    CHECK(rep.lhs > 0.6);
    CHECK(rep.lhs < 0.95);
}

TEST_CASE("eisenbaum is deterministic and parallel-invariant") {
    GreenOperator op(1, 2, 0.5);
    const Functional f = Functional::clipped_linear(100.0);
    const EisenbaumReport r1 = eisenbaum_check(op, 0.5, 1.0, f, 40000, 5, 1);
    const EisenbaumReport r2 = eisenbaum_check(op, 0.5, 1.0, f, 40000, 5, 3);
    CHECK(r1.lhs == r2.lhs);
    CHECK(r1.rhs == r2.rhs);
    CHECK(r1.se_lhs == r2.se_lhs);
    CHECK(r1.se_rhs == r2.se_rhs);
}

TEST_CASE("eisenbaum rejects bad configuration") {
    GreenOperator op(1, 2, 0.5);
    const Functional f = Functional::clipped_linear(10.0);
    CHECK_THROWS_AS(eisenbaum_check(op, 0.5, 0.0, f, 100, 1), ConfigError);
    CHECK_THROWS_AS(eisenbaum_check(op, 0.7, 1.0, f, 100, 1), ConfigError);
    CHECK_THROWS_AS(eisenbaum_check(op, 0.5, 1.0, f, 0, 1), ConfigError);
}

namespace {

ScalingSchedule single_point_schedule(double a, double R, double t,
                                      double r) {
    ScalingSchedule s;
    s.a = a;
    s.R = R;
    s.t = {t};
    s.r = {r};
    return s;
}

}  // namespace

TEST_CASE("tail bounds at N=1 where rho1 = lambda exactly") {
    // N=1: N_{2p}(Z) = |Z_0| with Z_0 ~ Normal(0, 1/lambda); both analytic
    // bounds and the exact exceedance probability are in closed form.
    const double lambda = 1.0;
    GreenOperator op(1, 1, lambda);
    ProblemParams pp;
    pp.d = 1;
    pp.p = 2.0;
    // alpha = 1 (r = 1), so N = round(R alpha) = 1 and lambda = a = 1
    const ScalingSchedule sched = single_point_schedule(1.0, 1.0, 20.0, 1.0);
    const double u = 1.5;
    const double epsilon = u * u / (20.0 * 1.0);
    const TailBoundReport rep = tail_bound_check(op, sched, pp, epsilon,
                                                 /*rho1=*/lambda, 200000, 31);
    CHECK(rep.threshold == doctest::Approx(u).epsilon(1e-12));
    CHECK(rep.rho2 == doctest::Approx(1.0 / lambda).epsilon(1e-15));
    // exact probability: P(|Z_0| >= u) = erfc(u sqrt(lambda/2))
    const double exact = std::erfc(u * std::sqrt(lambda / 2.0));
    CHECK(std::abs(rep.probability - exact) <= 4.0 * rep.se);
    CHECK(rep.verdict == std::string("consistent"));
    CHECK(rep.analytic_lower > 0.0);
    CHECK(rep.analytic_lower <= rep.probability + 4.0 * rep.se);
    CHECK(rep.analytic_upper >= rep.probability - 4.0 * rep.se);
    CHECK(rep.analytic_upper <= 1.0);
    // median of |Z_0| is sqrt(1/lambda) Phi^{-1}(0.75) ~ 0.6745
    CHECK(std::abs(rep.median_hat - 0.67449) < 0.02);
    CHECK(rep.median_ok);  // M^2 <= C(p) N^{d/p} G(0,0)
    CHECK(rep.median_sq_bound ==
          doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
    CHECK(rep.hits > 0);
    CHECK(rep.ci_lo <= exact);
    CHECK(rep.ci_hi >= exact);
}

TEST_CASE("tail bounds: threshold zero is trivially ordered") {
    GreenOperator op(1, 1, 1.0);
    ProblemParams pp;
    pp.d = 1;
    pp.p = 2.0;
    const ScalingSchedule sched = single_point_schedule(1.0, 1.0, 20.0, 1.0);
    const TailBoundReport rep =
        tail_bound_check(op, sched, pp, 0.0, 1.0, 5000, 4);
    CHECK(rep.threshold == 0.0);
    CHECK(rep.probability == 1.0);
    CHECK(rep.hits == 5000);
    CHECK(rep.analytic_lower <= 1.0);
    CHECK(rep.analytic_upper == 1.0);
    CHECK(rep.verdict == std::string("consistent"));
}

TEST_CASE("tail bounds: no hits reported inconclusive, not failure") {
    GreenOperator op(1, 1, 1.0);
    ProblemParams pp;
    pp.d = 1;
    pp.p = 2.0;
    const ScalingSchedule sched = single_point_schedule(1.0, 1.0, 20.0, 1.0);
    // u = 8 sigma: P ~ 1e-15, no hits at n = 20000
    const double epsilon = 64.0 / 20.0;
    const TailBoundReport rep =
        tail_bound_check(op, sched, pp, epsilon, 1.0, 20000, 9);
    CHECK(rep.hits == 0);
    CHECK(rep.verdict == std::string("inconclusive"));
}

TEST_CASE("tail bounds reject inconsistent configuration") {
    GreenOperator op(1, 1, 1.0);
    ProblemParams pp;
    pp.d = 1;
    pp.p = 2.0;
    const ScalingSchedule good = single_point_schedule(1.0, 1.0, 20.0, 1.0);
    CHECK_THROWS_AS(
        tail_bound_check(op, good, pp, -0.1, 1.0, 100, 1), ConfigError);
    CHECK_THROWS_AS(
        tail_bound_check(op, good, pp, 0.1, 0.0, 100, 1), ConfigError);
    CHECK_THROWS_AS(
        tail_bound_check(op, good, pp, 0.1, 1.0, 0, 1), ConfigError);
    // two grid points
    ScalingSchedule two = good;
    two.t = {10.0, 20.0};
    two.r = {1.0, 1.0};
    CHECK_THROWS_AS(
        tail_bound_check(op, two, pp, 0.1, 1.0, 100, 1), ConfigError);
    // schedule implies N = 4, green has N = 1
    const ScalingSchedule n4 = single_point_schedule(16.0, 1.0, 20.0, 0.5);
    CHECK_THROWS_AS(
        tail_bound_check(op, n4, pp, 0.1, 1.0, 100, 1), ConfigError);
    // lambda mismatch: same torus side, different a
    const ScalingSchedule badl = single_point_schedule(2.0, 1.0, 20.0, 1.0);
    CHECK_THROWS_AS(
        tail_bound_check(op, badl, pp, 0.1, 1.0, 100, 1), ConfigError);
}

TEST_CASE("tail bound check is parallel-invariant") {
    GreenOperator op(1, 1, 1.0);
    ProblemParams pp;
    pp.d = 1;
    pp.p = 2.0;
    const ScalingSchedule sched = single_point_schedule(1.0, 1.0, 20.0, 1.0);
    const TailBoundReport r1 =
        tail_bound_check(op, sched, pp, 0.1125, 1.0, 30000, 77, 1);
    const TailBoundReport r2 =
        tail_bound_check(op, sched, pp, 0.1125, 1.0, 30000, 77, 4);
    CHECK(r1.probability == r2.probability);
    CHECK(r1.median_hat == r2.median_hat);
    CHECK(r1.hits == r2.hits);
}

}  // TEST_SUITE
