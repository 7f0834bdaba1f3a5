#pragma once
// Centered Gaussian fields with covariance G_{N,lambda}: spectral sampler,
// l^{2p} norms, the Eisenbaum isomorphism check, and the Gaussian tail /
// concentration bounds driven by rho_1.
//
// Sampling is diagonal in Fourier modes: Z = sum_k (lambda+mu_k)^{-1/2}
// xi_k psi_k with xi_k i.i.d. standard normal and {psi_k} the real
// orthonormal cosine/sine eigenbasis, so the covariance is exact by
// construction.

#include <cstdint>
#include <string>
#include <vector>

#include "siltlab/green.hpp"
#include "siltlab/params.hpp"
#include "siltlab/rng.hpp"

namespace siltlab {

struct GaussianField {
    int d = 0;
    int N = 0;
    double lambda = 0.0;  // provenance: covariance parameter
    // Site-indexed values; coordinate 0 is the least significant digit,
    // matching GreenOperator and the torus keys of LocalTimeField.
    std::vector<double> values;
};

class SpectralSampler {
  public:
    explicit SpectralSampler(const GreenOperator& green);

    int d() const { return d_; }
    int N() const { return N_; }
    double lambda() const { return lambda_; }
    int64_t size() const { return size_; }

    // Draws exactly size() standard normals from the stream.
    GaussianField sample(RngStream& rng) const;

    // Row-major M x M matrix; column j is scale_j * psi_j evaluated at all
    // sites, so that B B^T equals the dense covariance exactly.
    const std::vector<double>& basis_matrix() const { return B_; }

  private:
    int d_, N_;
    double lambda_;
    int64_t size_;
    std::vector<double> B_;
};

// (sum_x |v_x|^{2p})^{1/2p}; requires p > 1.
double norm_2p(const std::vector<double>& values, double p);
double norm_2p(const GaussianField& field, double p);

// Bounded functionals for the isomorphism check: clipped polynomials of the
// origin value and the indicator of a thresholded l^{2p} norm.  The clip
// level is part of the functional and is echoed in reports.
struct Functional {
    enum class Kind { clipped_linear, clipped_quadratic, norm_indicator };
    Kind kind = Kind::clipped_linear;
    double clip_bound = 1e6;  // clipped polynomials
    double p = 2.0;           // norm_indicator
    double threshold = 0.0;   // norm_indicator

    static Functional clipped_linear(double clip_bound);
    static Functional clipped_quadratic(double clip_bound);
    static Functional norm_indicator(double p, double threshold);

    double evaluate(const std::vector<double>& S) const;
    const char* name() const;
};

struct EisenbaumReport {
    int d = 0, N = 0;
    double lambda = 0.0, s = 0.0;
    std::string functional;
    double clip_bound = 0.0;  // 0 when the functional has no clip
    int64_t n_samples = 0;
    double lhs = 0.0, rhs = 0.0;
    double se_lhs = 0.0, se_rhs = 0.0;

    double combined_se() const;
    // |lhs - rhs| in units of the combined standard error.
    double z_score() const;
    bool within(double k_sigma) const;
};

// Two-sided Monte Carlo check of E[F(S)] = E[F(0.5 (Z+s)^2) (1 + Z_0/s)]
// with S_x = l_tau(x) + 0.5 (Z_x + s)^2; the walk (killed at Exp(lambda))
// and the field are sampled independently.  Sample i of the left side uses
// stream i, sample i of the right side uses stream n_samples + i.
EisenbaumReport eisenbaum_check(const GreenOperator& green, double lambda,
                                double s, const Functional& F,
                                int64_t n_samples, uint64_t seed,
                                int jobs = 0);

// Empirical quantile of N_{2p}(S) under the left-hand sampling, used to
// place indicator thresholds; runs on its own derived stream family.
double pilot_norm_quantile(const GreenOperator& green, double lambda,
                           double s, double p, double quantile,
                           int64_t n_pilot, uint64_t seed, int jobs = 0);

struct TailBoundReport {
    int d = 0, N = 0;
    double lambda = 0.0, p = 0.0;
    double a = 0.0, R = 0.0, t = 0.0, r = 0.0;
    double epsilon = 0.0;
    double threshold = 0.0;  // u = sqrt(t * r * epsilon)
    double rho1 = 0.0, rho2 = 0.0;
    int64_t n_samples = 0, hits = 0;
    double probability = 0.0, se = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // exact binomial 95%
    double analytic_lower = 0.0;      // Gaussian lower bound via rho2
    double analytic_upper = 0.0;      // concentration bound via median
    double median_hat = 0.0;
    double median_sq_bound = 0.0;  // C(p) N^{d/p} G(0,0)
    bool median_ok = false;
    std::string verdict;  // consistent | inconclusive | violates_*
};

// Checks P(N_{2p}(Z) >= sqrt(t r epsilon)) against the analytic lower bound
// (via rho2 = 1/rho1) and the median concentration upper bound.  The bounds
// hold for every positive (a, R, t, epsilon); no growth window is required.
// The schedule must carry exactly one (t, r) grid point consistent with the
// Green operator.
TailBoundReport tail_bound_check(const GreenOperator& green,
                                 const ScalingSchedule& scaling,
                                 const ProblemParams& params, double epsilon,
                                 double rho1, int64_t n_samples,
                                 uint64_t seed, int jobs = 0);

}  // namespace siltlab
