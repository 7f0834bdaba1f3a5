#include "siltlab/gauss_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siltlab/parallel.hpp"
#include "siltlab/stats.hpp"
#include "siltlab/walk.hpp"

namespace siltlab {

namespace {

void unpack_index(int64_t idx, int d, int N, int* x) {
    for (int i = 0; i < d; ++i) {
        x[i] = int(idx % N);
        idx /= N;
    }
}

// Lexicographic comparison of k against its conjugate (-k mod N).
// Returns <0 when k is the canonical representative of a true pair,
// 0 when the mode is self-conjugate (every component 0 or N/2).
int conjugate_order(const std::vector<int>& k, int N) {
    for (size_t i = 0; i < k.size(); ++i) {
        const int conj = (N - k[i]) % N;
        if (k[i] != conj) return k[i] < conj ? -1 : +1;
    }
    return 0;
}

}  // namespace

SpectralSampler::SpectralSampler(const GreenOperator& green)
    : d_(green.d()), N_(green.N()), lambda_(green.lambda()),
      size_(green.size()) {
    if (size_ > (int64_t(1) << 13))
        throw ConfigError("sampler: dense basis capped at 2^13 sites");
    const int64_t M = size_;
    B_.assign(M * M, 0.0);
    const double inv_sqrt_m = 1.0 / std::sqrt(double(M));
    std::vector<int> k(d_, 0), x(d_);
    int64_t col = 0;
    // Mode odometer in the same order as GreenOperator's spectral sums.
    do {
        const int order = conjugate_order(k, N_);
        if (order > 0) continue;  // conjugate partner already emitted
        const double scale = 1.0 / std::sqrt(lambda_ + green.mu(k.data()));
        if (order == 0) {
            // self-conjugate: psi(x) = M^{-1/2} cos(2 pi k.x / N), cos = +-1
            const double amp = scale * inv_sqrt_m;
            for (int64_t i = 0; i < M; ++i) {
                unpack_index(i, d_, N_, x.data());
                int64_t r = 0;
                for (int t = 0; t < d_; ++t) r += int64_t(k[t]) * x[t];
                const double theta =
                    2.0 * std::numbers::pi * double(r % N_) / N_;
                B_[i * M + col] = amp * std::cos(theta);
            }
            ++col;
        } else {
            // conjugate pair: sqrt(2/M) (cos, sin) columns
            const double amp = scale * inv_sqrt_m * std::numbers::sqrt2;
            const int64_t ccol = col, scol = col + 1;
            for (int64_t i = 0; i < M; ++i) {
                unpack_index(i, d_, N_, x.data());
                int64_t r = 0;
                for (int t = 0; t < d_; ++t) r += int64_t(k[t]) * x[t];
                const double theta =
                    2.0 * std::numbers::pi * double(r % N_) / N_;
                B_[i * M + ccol] = amp * std::cos(theta);
                B_[i * M + scol] = amp * std::sin(theta);
            }
            col += 2;
        }
    } while ([&] {
        int i = 0;
        while (i < d_ && ++k[i] == N_) {
            k[i] = 0;
            ++i;
        }
        return i < d_;
    }());
    if (col != M)
        throw ConvergenceError("sampler: basis column count mismatch");
}

GaussianField SpectralSampler::sample(RngStream& rng) const {
    GaussianField f;
    f.d = d_;
    f.N = N_;
    f.lambda = lambda_;
    f.values.assign(size_, 0.0);
    const int64_t M = size_;
    for (int64_t j = 0; j < M; ++j) {
        const double xi = rng.normal();
        for (int64_t i = 0; i < M; ++i) f.values[i] += B_[i * M + j] * xi;
    }
    return f;
}

double norm_2p(const std::vector<double>& values, double p) {
    if (!(p > 1.0)) throw ConfigError("norm_2p: requires p > 1");
    long double acc = 0.0L;
    for (double v : values) acc += power_p(std::abs(v), 2.0 * p);
    return std::pow(double(acc), 1.0 / (2.0 * p));
}

double norm_2p(const GaussianField& field, double p) {
    return norm_2p(field.values, p);
}

// ---------------------------------------------------------------- functionals

Functional Functional::clipped_linear(double clip_bound) {
    if (!(clip_bound > 0.0))
        throw ConfigError("functional: clip bound must be > 0");
    Functional f;
    f.kind = Kind::clipped_linear;
    f.clip_bound = clip_bound;
    return f;
}

Functional Functional::clipped_quadratic(double clip_bound) {
    if (!(clip_bound > 0.0))
        throw ConfigError("functional: clip bound must be > 0");
    Functional f;
    f.kind = Kind::clipped_quadratic;
    f.clip_bound = clip_bound;
    return f;
}

Functional Functional::norm_indicator(double p, double threshold) {
    if (!(p > 1.0)) throw ConfigError("functional: indicator requires p > 1");
    if (!(threshold >= 0.0))
        throw ConfigError("functional: indicator threshold must be >= 0");
    Functional f;
    f.kind = Kind::norm_indicator;
    f.p = p;
    f.threshold = threshold;
    return f;
}

double Functional::evaluate(const std::vector<double>& S) const {
    switch (kind) {
        case Kind::clipped_linear:
            return std::min(S[0], clip_bound);
        case Kind::clipped_quadratic:
            return std::min(S[0] * S[0], clip_bound);
        case Kind::norm_indicator:
            return norm_2p(S, p) >= threshold ? 1.0 : 0.0;
    }
    return 0.0;
}

const char* Functional::name() const {
    switch (kind) {
        case Kind::clipped_linear:
            return "clipped_linear";
        case Kind::clipped_quadratic:
            return "clipped_quadratic";
        case Kind::norm_indicator:
            return "norm_indicator";
    }
    return "unknown";
}

// ------------------------------------------------------------------ eisenbaum

double EisenbaumReport::combined_se() const {
    return std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs);
}

double EisenbaumReport::z_score() const {
    const double c = combined_se();
    const double diff = std::abs(lhs - rhs);
    if (c == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
    return diff / c;
}

bool EisenbaumReport::within(double k_sigma) const {
    return z_score() <= k_sigma;
}

EisenbaumReport eisenbaum_check(const GreenOperator& green, double lambda,
                                double s, const Functional& F,
                                int64_t n_samples, uint64_t seed, int jobs) {
    if (s == 0.0) throw ConfigError("eisenbaum: s must be nonzero");
    if (lambda != green.lambda())
        throw ConfigError(
            "eisenbaum: lambda must match the Green operator's kill rate");
    if (n_samples < 1) throw ConfigError("eisenbaum: need n_samples >= 1");

    const SpectralSampler sampler(green);
    const Geometry geom = Geometry::torus(green.d(), green.N());
    const int64_t M = green.size();
    const uint64_t n = uint64_t(n_samples);

    // lhs: S_x = l_tau(x) + 0.5 (Z_x + s)^2, walk and field independent
    // (drawn sequentially from one per-sample stream).
    MeanAccumulator lhs = parallel_reduce<MeanAccumulator>(
        n, jobs, [&](uint64_t i, MeanAccumulator& acc) {
            RngStream rng = RngStream::for_sample(seed, i);
            const LocalTimeField walk =
                stop_at_exponential(geom, lambda, rng);
            const GaussianField z = sampler.sample(rng);
            std::vector<double> S(M);
            for (int64_t x = 0; x < M; ++x) {
                const double zs = z.values[x] + s;
                S[x] = 0.5 * zs * zs;
            }
            // each key appears once, so iteration order cannot matter
            for (const auto& [key, time] : walk.occupation) S[key] += time;
            acc.add(F.evaluate(S));
        });

    // rhs: F(0.5 (Z+s)^2) weighted by (1 + Z_0 / s), field only.
    MeanAccumulator rhs = parallel_reduce<MeanAccumulator>(
        n, jobs, [&](uint64_t i, MeanAccumulator& acc) {
            RngStream rng = RngStream::for_sample(seed, uint64_t(n) + i);
            const GaussianField z = sampler.sample(rng);
            std::vector<double> S(M);
            for (int64_t x = 0; x < M; ++x) {
                const double zs = z.values[x] + s;
                S[x] = 0.5 * zs * zs;
            }
            acc.add(F.evaluate(S) * (1.0 + z.values[0] / s));
        });

    EisenbaumReport rep;
    rep.d = green.d();
    rep.N = green.N();
    rep.lambda = lambda;
    rep.s = s;
    rep.functional = F.name();
    rep.clip_bound =
        F.kind == Functional::Kind::norm_indicator ? 0.0 : F.clip_bound;
    rep.n_samples = n_samples;
    rep.lhs = lhs.mean();
    rep.rhs = rhs.mean();
    rep.se_lhs = lhs.se();
    rep.se_rhs = rhs.se();
    return rep;
}

namespace {

struct NormCollector {
    std::vector<double> norms;
    uint64_t hits = 0;

    void merge(const NormCollector& o) {
        norms.insert(norms.end(), o.norms.begin(), o.norms.end());
        hits += o.hits;
    }
};

}  // namespace

double pilot_norm_quantile(const GreenOperator& green, double lambda,
                           double s, double p, double quantile,
                           int64_t n_pilot, uint64_t seed, int jobs) {
    if (s == 0.0) throw ConfigError("pilot: s must be nonzero");
    if (lambda != green.lambda())
        throw ConfigError("pilot: lambda must match the Green operator's");
    if (!(p > 1.0)) throw ConfigError("pilot: requires p > 1");
    if (!(quantile > 0.0 && quantile < 1.0))
        throw ConfigError("pilot: quantile must lie in (0,1)");
    if (n_pilot < 1) throw ConfigError("pilot: need n_pilot >= 1");

    const SpectralSampler sampler(green);
    const Geometry geom = Geometry::torus(green.d(), green.N());
    const int64_t M = green.size();
    // dedicated stream family, disjoint from the main check's samples
    const uint64_t pilot_seed = seed ^ 0x70494C4F54534545ULL;

    NormCollector all = parallel_reduce<NormCollector>(
        uint64_t(n_pilot), jobs, [&](uint64_t i, NormCollector& acc) {
            RngStream rng = RngStream::for_sample(pilot_seed, i);
            const LocalTimeField walk =
                stop_at_exponential(geom, lambda, rng);
            const GaussianField z = sampler.sample(rng);
            std::vector<double> S(M);
            for (int64_t x = 0; x < M; ++x) {
                const double zs = z.values[x] + s;
                S[x] = 0.5 * zs * zs;
            }
            for (const auto& [key, time] : walk.occupation) S[key] += time;
            acc.norms.push_back(norm_2p(S, p));
        });

    const size_t idx = std::min<size_t>(
        size_t(std::floor(quantile * double(n_pilot))), all.norms.size() - 1);
    std::nth_element(all.norms.begin(), all.norms.begin() + idx,
                     all.norms.end());
    return all.norms[idx];
}

// ---------------------------------------------------------------- tail bounds

TailBoundReport tail_bound_check(const GreenOperator& green,
                                 const ScalingSchedule& scaling,
                                 const ProblemParams& params, double epsilon,
                                 double rho1, int64_t n_samples,
                                 uint64_t seed, int jobs) {
    params.validate();
    if (scaling.t.size() != 1 || scaling.r.size() != 1)
        throw ConfigError(
            "tail bound: schedule must carry exactly one (t, r) point");
    if (!(scaling.a > 0.0) || !(scaling.R > 0.0) || !(scaling.t[0] > 0.0) ||
        !(scaling.r[0] > 0.0))
        throw ConfigError("tail bound: a, R, t, r must be positive");
    if (!(epsilon >= 0.0)) throw ConfigError("tail bound: epsilon >= 0");
    if (!(rho1 > 0.0)) throw ConfigError("tail bound: rho1 must be > 0");
    if (n_samples < 1) throw ConfigError("tail bound: need n_samples >= 1");
    if (params.d != green.d())
        throw ConfigError("tail bound: dimension mismatch with Green");
    if (scaling.torus_side(params, 0) != green.N())
        throw ConfigError("tail bound: schedule torus side != Green's N");
    const double lam = scaling.lambda(params, 0);
    if (std::abs(lam - green.lambda()) > 1e-9 * green.lambda())
        throw ConfigError("tail bound: schedule lambda != Green's lambda");

    const double t = scaling.t[0], r = scaling.r[0];
    const double tre = t * r * epsilon;  // t r_t epsilon
    const double u = std::sqrt(tre);
    const double rho2 = 1.0 / rho1;
    const double p = params.p;

    const SpectralSampler sampler(green);
    NormCollector mc = parallel_reduce<NormCollector>(
        uint64_t(n_samples), jobs, [&](uint64_t i, NormCollector& acc) {
            RngStream rng = RngStream::for_sample(seed, i);
            const GaussianField z = sampler.sample(rng);
            const double norm = norm_2p(z, p);
            acc.norms.push_back(norm);
            if (norm >= u) ++acc.hits;
        });

    TailBoundReport rep;
    rep.d = params.d;
    rep.N = green.N();
    rep.lambda = green.lambda();
    rep.p = p;
    rep.a = scaling.a;
    rep.R = scaling.R;
    rep.t = t;
    rep.r = r;
    rep.epsilon = epsilon;
    rep.threshold = u;
    rep.rho1 = rho1;
    rep.rho2 = rho2;
    rep.n_samples = n_samples;
    rep.hits = int64_t(mc.hits);
    rep.probability = double(mc.hits) / double(n_samples);
    rep.se = binomial_se(mc.hits, uint64_t(n_samples));
    const BinomialCI ci = binomial_ci(mc.hits, uint64_t(n_samples), 0.95);
    rep.ci_lo = ci.lo;
    rep.ci_hi = ci.hi;

    // lower median (order statistic at (n-1)/2)
    {
        const size_t mid = (mc.norms.size() - 1) / 2;
        std::nth_element(mc.norms.begin(), mc.norms.begin() + mid,
                         mc.norms.end());
        rep.median_hat = mc.norms[mid];
    }

    // Gaussian lower bound: (2 pi t r eps rho1)^{-1/2} (1 - 1/(t r eps rho1))
    // exp(-t r eps rho1 / 2); vacuous (<= 0) when t r eps rho1 <= 1.
    if (u == 0.0) {
        rep.analytic_lower = 0.0;
    } else {
        rep.analytic_lower = (1.0 - 1.0 / (tre * rho1)) *
                             std::exp(-0.5 * tre * rho1) /
                             std::sqrt(2.0 * std::numbers::pi * tre * rho1);
    }

    // concentration upper bound: P(N >= u) <= 2 P(Y >= (u - M)/sqrt(rho2))
    if (u <= rep.median_hat) {
        rep.analytic_upper = 1.0;
    } else {
        rep.analytic_upper = std::min(
            1.0, std::erfc((u - rep.median_hat) / std::sqrt(2.0 * rho2)));
    }

    // median chain: M^2 <= C(p) N^{d/p} G(0,0), C(p) = 2^{1/p} E[|Y|^{2p}]^{1/p}
    const double cp = std::pow(2.0 * gaussian_abs_moment_2p(p), 1.0 / p);
    rep.median_sq_bound =
        cp * std::pow(double(green.N()), params.d / p) * green.green00();
    rep.median_ok =
        rep.median_hat * rep.median_hat <= rep.median_sq_bound * (1.0 + 1e-12);

    if (mc.hits == 0 && u > 0.0) {
        rep.verdict = "inconclusive";
    } else {
        const double lower_eff = std::max(rep.analytic_lower, 0.0);
        if (rep.ci_hi < lower_eff)
            rep.verdict = "violates_lower";
        else if (rep.ci_lo > rep.analytic_upper)
            rep.verdict = "violates_upper";
        else
            rep.verdict = "consistent";
    }
    return rep;
}

}  // namespace siltlab
