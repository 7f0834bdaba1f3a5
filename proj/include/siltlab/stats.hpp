#pragma once
// Small statistics helpers shared by the Monte-Carlo drivers: running
// mean/SE accumulation, exact (Clopper-Pearson) binomial confidence
// intervals, and weighted least squares for rate extraction.

#include <cstdint>
#include <vector>

namespace siltlab {

// Sum-based accumulator in extended precision; merge order must be fixed by
// the caller (chunk index) for bitwise reproducibility.
struct MeanAccumulator {
    long double sum = 0.0L;
    long double sumsq = 0.0L;
    uint64_t n = 0;

    void add(double x) {
        sum += x;
        sumsq += (long double)x * x;
        ++n;
    }
    void merge(const MeanAccumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        n += o.n;
    }
    double mean() const { return n ? double(sum / n) : 0.0; }
    // SE of the mean from the empirical variance.
    double se() const;
};

struct BinomialCI {
    double lo = 0.0;
    double hi = 1.0;
};

// Exact two-sided Clopper-Pearson interval at the given confidence level.
BinomialCI binomial_ci(uint64_t hits, uint64_t n, double confidence = 0.95);

// Wald standard error sqrt(p(1-p)/n); 0 and n hits give 0 by convention.
double binomial_se(uint64_t hits, uint64_t n);

struct WlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    double r_squared = 0.0;
    // Signed curvature diagnostic: weighted mean residual of the middle
    // third minus the outer thirds; large |value| relative to point sigmas
    // flags a pre-asymptotic (non-linear) regime.
    double curvature = 0.0;
    int n_points = 0;
};

// Weighted least squares y ~ intercept + slope * x with per-point sigmas.
WlsFit wls_fit(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& sigma);

// E[|Y|^{2p}] for Y ~ N(0,1): 2^p Gamma(p + 1/2) / sqrt(pi).
double gaussian_abs_moment_2p(double p);

}  // namespace siltlab
