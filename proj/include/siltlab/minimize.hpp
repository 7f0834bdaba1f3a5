#pragma once
// Norm-constrained first-order minimization: projected gradient descent on
// the counting-norm sphere N_r(x) = 1 with renormalization after each step,
// Armijo backtracking, and Barzilai-Borwein step seeding.  The problems
// here are nonconvex under the sphere constraint, so drivers run several
// deterministic starts and keep the best result (smallest value, with the
// lexicographically smallest start index on ties).

#include <cstdint>
#include <functional>
#include <vector>

#include "siltlab/errors.hpp"

namespace siltlab {

struct SphereProblem {
    double r = 4.0;  // constraint exponent: N_r(x) = 1
    std::function<double(const std::vector<double>&)> value;
    // writes the full (unconstrained) gradient of value into out
    std::function<void(const std::vector<double>&, std::vector<double>&)>
        gradient;
};

struct MinimizeOptions {
    double tol = 1e-9;
    int max_iters = 50000;
};

struct MinimizeOutcome {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;  // l2 norm of the tangential gradient
    bool converged = false;
};

// Projects x0 onto the sphere, then iterates until the relative objective
// decrease and the tangential-gradient residual both fall under tol.
MinimizeOutcome minimize_on_sphere(const SphereProblem& problem,
                                   std::vector<double> x0,
                                   const MinimizeOptions& opts);

// Deterministic start family for multi-start drivers over n variables:
//   0: constant positive,
//   1: centered bump,
//   2..n_starts-1: i.i.d. Gaussian from per-start streams of `seed`.
std::vector<std::vector<double>> multistart_family(int64_t n, int n_starts,
                                                   uint64_t seed);

// Runs minimize_on_sphere from every start (plus optional extra starts
// appended after the family) and merges: smallest value wins, ties go to
// the smaller start index.  Unconverged runs lose to converged ones.
MinimizeOutcome multistart_minimize(
    const SphereProblem& problem, int64_t n, const MinimizeOptions& opts,
    uint64_t seed, int n_starts = 8,
    const std::vector<std::vector<double>>& extra_starts = {});

}  // namespace siltlab
