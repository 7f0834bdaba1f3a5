#pragma once
// Torus-indexed lattice functions and the quadratic energies built on them.
// Site index: coordinate i is digit i, least significant first (shared with
// GreenOperator and torus LocalTimeField keys).

#include <cstdint>
#include <vector>

#include "siltlab/errors.hpp"

namespace siltlab {

struct TorusGrid {
    int d = 1, N = 1;
    int64_t size = 1;
    std::vector<int64_t> stride;  // stride[i] = N^i

    TorusGrid(int d_, int N_);

    int coord(int64_t idx, int axis) const {
        return int((idx / stride[axis]) % N);
    }
    // site shifted by +-1 along an axis, wrapping
    int64_t neighbor(int64_t idx, int axis, int step) const {
        const int c = coord(idx, axis);
        if (step > 0)
            return c + 1 == N ? idx - stride[axis] * (N - 1)
                              : idx + stride[axis];
        return c == 0 ? idx + stride[axis] * (N - 1) : idx - stride[axis];
    }
};

struct LatticeFunction {
    int d = 1, N = 1;
    std::vector<double> values;
};

// counting norm N_r(v) = (sum |v|^r)^{1/r}, r > 0
double counting_norm(const std::vector<double>& v, double r);
// sum v^2
double norm2_sq(const std::vector<double>& v);
// forward-difference Dirichlet sum: sum_x sum_i (v(x+e_i) - v(x))^2
double dirichlet_fwd(const TorusGrid& g, const std::vector<double>& v);
// graph Laplacian L v (x) = sum_i (2 v(x) - v(x+e_i) - v(x-e_i)), so that
// <v, L v> = dirichlet_fwd(v)
void apply_graph_laplacian(const TorusGrid& g, const std::vector<double>& v,
                           std::vector<double>& out);

}  // namespace siltlab
