#pragma once
// The paper-level variational problems.  Discrete side: rho_1 and its dual
// rho_2 on the torus, plus the generalized two-coefficient quadratic
// minimization used by the discrete-to-continuum convergence study.
//
// Convention (pinned by the duality rho_1 * rho_2 = 1, which is
// convention-free): the gradient part of the rho_1 energy is the
// forward-difference sum N_2^2(grad h) = sum_x sum_i (h(x+e_i) - h(x))^2
// with coefficient 1, so the objective is exactly <h, (lambda - Delta) h>.

#include <cstdint>
#include <vector>

#include "siltlab/lattice_function.hpp"
#include "siltlab/minimize.hpp"

namespace siltlab {

struct MinimizerResult {
    double value = 0.0;
    LatticeFunction minimizer;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Minimizes mass_coeff * sum h^2 + grad_coeff * sum_fwd (grad h)^2 over the
// unit 2p-sphere.  rho_1 uses (lambda, 1); the rescaled convergence-study
// functional uses (a alpha^{-d/q}, alpha^{2-d/q}/2).
MinimizerResult solve_quadratic_min(int N, int d, double mass_coeff,
                                    double grad_coeff, double p, double tol);

// rho_1(N, d, lambda, p) = inf { <h, (lambda - Delta) h> : N_{2p}(h) = 1 }.
// Satisfies lambda <= rho_1 <= lambda N^{d/q}.
MinimizerResult solve_rho1(int N, int d, double lambda, double p, double tol);

// rho_2 = sup { <f, G f> : N_{(2p)'}(f) = 1 }, (2p)' = 2p/(2p-1).
// Dual to rho_1: rho_1 * rho_2 = 1.
MinimizerResult solve_rho2(int N, int d, double lambda, double p, double tol);

}  // namespace siltlab
