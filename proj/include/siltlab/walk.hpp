#pragma once
// Continuous-time simple random walk on Z^d and on discrete tori:
// local-time accumulation, SILT, torus folding, rescaled profiles.
//
// The walk jumps with total rate 2d (unit rate per neighbor), matching the
// generator Delta f(x) = sum_{y~x} (f(y) - f(x)).  Simulation is
// event-driven: exponential holding times, uniform neighbor choice.

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "siltlab/errors.hpp"
#include "siltlab/rng.hpp"

namespace siltlab {

enum class LatticeKind { free_lattice, torus };

struct Geometry {
    LatticeKind kind = LatticeKind::free_lattice;
    int d = 1;
    int side = 0;  // torus side N; 0 for the free lattice

    static Geometry free_lattice(int d) { return {LatticeKind::free_lattice, d, 0}; }
    static Geometry torus(int d, int side) { return {LatticeKind::torus, d, side}; }
};

// Packed site keys:
//   free lattice (d <= 3): 21-bit fields per coordinate, offset by 2^20
//   torus (N^d < 2^62):    mixed radix x_0 + x_1 N + x_2 N^2 + ...
int64_t pack_site(const Geometry& g, const int* x);
void unpack_site(const Geometry& g, int64_t key, int* x);

struct LocalTimeField {
    Geometry geom;
    std::unordered_map<int64_t, double> occupation;
    double total_time = 0.0;
    uint64_t jump_count = 0;

    // Extended-precision sum of occupation times, in fixed site order.
    double mass() const;
    // Declared accumulation bound: eps * (jump_count + 2) * total_time.
    double mass_error_bound() const;
};

LocalTimeField simulate_walk(const Geometry& g, double horizon, RngStream& rng);

// Draws tau ~ Exp(lambda) first, then runs the walk to horizon tau.
LocalTimeField stop_at_exponential(const Geometry& g, double lambda, RngStream& rng);

// x^p with fast paths for p = 2, 3.  All SILT-style power sums and the
// matching Monte-Carlo thresholds go through this one function so that
// per-sample threshold comparisons are consistent to the last bit.
inline double power_p(double x, double p) {
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::pow(x, p);
}

double silt(const LocalTimeField& f, double p);     // I = sum l(x)^p
double lp_norm(const LocalTimeField& f, double p);  // N_p(l) = I^{1/p}

LocalTimeField fold_to_torus(const LocalTimeField& f, int side);

// Step function L(x) = alpha^d/t * l(floor(alpha x)), constant on cells of
// side 1/alpha; stores the per-cell values keyed like the source field.
struct RescaledProfile {
    double alpha = 1.0;
    double t = 1.0;
    int d = 1;
    std::unordered_map<int64_t, double> values;

    double mass() const;           // integral of L, equals 1
    double lp_norm(double p) const;  // (alpha^{-d} sum v^p)^{1/p}
};

RescaledProfile rescaled_profile(const LocalTimeField& f, double alpha, double t);

}  // namespace siltlab
