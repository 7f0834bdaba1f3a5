#pragma once
// Problem parameters and the (a, R, t, r_t) scaling schedule.
//
// Conventions fixed here and used by every module:
//   q       = p/(p-1)                 (conjugate exponent, always derived)
//   alpha_t = r_t^{-q/d}              (spatial scale)
//   lambda_t = a * alpha_t^{-2} = a * r_t^{2q/d}   (killing rate)
// The walk jumps with total rate 2d (one unit rate per neighbor), matching
// the generator  Delta f(x) = sum_{y~x} (f(y) - f(x)).

#include <cmath>
#include <cstddef>
#include <vector>

#include "siltlab/errors.hpp"

namespace siltlab {

struct ProblemParams {
    int d = 1;
    double p = 2.0;

    double q() const { return p / (p - 1.0); }
    // Subcritical regime p(d-2) < d, equivalently d(p-1)/p < 2.
    bool subcritical() const { return p * (d - 2) < double(d); }

    void validate() const {
        if (d < 1) throw ConfigError("params: d must be >= 1");
        if (!(p > 1.0)) throw ConfigError("params: p must be > 1");
    }
    void require_subcritical() const {
        validate();
        if (!subcritical())
            throw ConfigError("params: supercritical regime p(d-2) >= d");
    }
};

struct ScalingSchedule {
    double a = 1.0;
    double R = 1.0;
    std::vector<double> t;
    std::vector<double> r;  // r_t per grid point, in (0,1)

    size_t size() const { return t.size(); }

    double alpha(const ProblemParams& pp, size_t i) const {
        return std::pow(r[i], -pp.q() / pp.d);
    }
    double lambda(const ProblemParams& pp, size_t i) const {
        double al = alpha(pp, i);
        return a / (al * al);
    }
    // Torus side used when folding at grid point i.
    int torus_side(const ProblemParams& pp, size_t i) const {
        return int(std::lround(R * alpha(pp, i)));
    }

    void validate(const ProblemParams& pp, double window_slack = 1.0) const;
};

}  // namespace siltlab
