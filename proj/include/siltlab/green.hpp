#pragma once
// Killed-walk Green's function on the d-dimensional discrete torus of side
// N, in spectral form.  With the rate-2d walk (unit rate per neighbor):
//   mu_k    = sum_{i=1}^d 2 (1 - cos(2 pi k_i / N)),  k in {0,...,N-1}^d
//   p_s(0,x) = N^{-d} sum_k exp(-s mu_k) cos(2 pi k.x / N)
//   G(0,x)   = N^{-d} sum_k cos(2 pi k.x / N) / (lambda + mu_k)
// G is the covariance of the associated Gaussian field and satisfies
// (lambda - Delta) G = Id with Delta f(x) = sum_{y~x} (f(y) - f(x)).

#include <cstdint>
#include <vector>

#include "siltlab/errors.hpp"

namespace siltlab {

class GreenOperator {
  public:
    GreenOperator(int d, int N, double lambda);

    int d() const { return d_; }
    int N() const { return N_; }
    double lambda() const { return lambda_; }
    int64_t size() const { return size_; }  // N^d

    // Axis eigenvalues 2(1 - cos(2 pi k / N)), k = 0..N-1.
    const std::vector<double>& axis_spectrum() const { return axis_mu_; }
    double mu(const int* k) const;
    // Spectral gap: smallest mu over nonzero modes (0 when N = 1).
    double spectral_gap() const;

    double green(const int* dx) const;
    double green00() const;
    double heat_kernel(double s, const int* dx) const;

    // Real-space sum over all x of G(0,x); equals 1/lambda.
    double sum_green() const;

    // G(0, x) for every site x (row-major over the mixed-radix site index).
    std::vector<double> green_row() const;
    // Dense M x M covariance, M = N^d.
    std::vector<double> dense_matrix() const;
    // y = G f via the displacement table, O(M^2).
    std::vector<double> apply(const std::vector<double>& f) const;

  private:
    int d_, N_;
    double lambda_;
    int64_t size_;
    std::vector<double> axis_mu_;
    std::vector<double> cos_tab_;  // cos(2 pi r / N), mirrored exactly
};

// max over the s grid of s^{d/2} |p_s(0,0) - N^{-d}|; the empirical Nash
// constant, bounded uniformly in N.
double check_nash_bound(int N, int d, const std::vector<double>& s_grid);

struct GreenScalingRow {
    double alpha;
    int N;
    double lambda;
    double green00;
};

// Table of G_{N,lambda}(0,0) along alpha with N = round(R alpha) and
// lambda = a / alpha^2.
std::vector<GreenScalingRow> green_origin_scaling(
    int d, double a, double R, const std::vector<double>& alpha_grid);

}  // namespace siltlab
