#include "siltlab/params.hpp"

#include <cmath>
#include <string>

namespace siltlab {

// Window checks for the r_t schedule.  The asymptotic statements use "<<",
// which has no constants; we check the strict inequalities
//     slack * lower(t) < r_t  and  r_t * slack < 1
// with a user-supplied slack factor (default 1 = plain strict inequality).
//     d = 1:  t^{-1/2q} << r_t << 1
//     d = 2:  (log t / t)^{1/q} << r_t << 1
//     d >= 3: t^{-1/q} << r_t << 1
void ScalingSchedule::validate(const ProblemParams& pp, double window_slack) const {
    pp.validate();
    if (!(a > 0)) throw ConfigError("schedule: a must be > 0");
    if (!(R > 0)) throw ConfigError("schedule: R must be > 0");
    if (t.size() != r.size())
        throw ConfigError("schedule: t and r grids must have equal length");
    if (!(window_slack > 0)) throw ConfigError("schedule: slack must be > 0");

    double q = pp.q();
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0))
            throw ConfigError("schedule: t must be > 0 at index " + std::to_string(i));
        if (!(r[i] > 0.0 && r[i] < 1.0))
            throw ConfigError("schedule: r_t must lie in (0,1) at index " +
                              std::to_string(i));
        double lower;
        if (pp.d == 1)
            lower = std::pow(t[i], -1.0 / (2.0 * q));
        else if (pp.d == 2)
            lower = t[i] > 1.0 ? std::pow(std::log(t[i]) / t[i], 1.0 / q) : 1.0;
        else
            lower = std::pow(t[i], -1.0 / q);
        if (!(r[i] > window_slack * lower))
            throw ConfigError("schedule: r_t below the d=" + std::to_string(pp.d) +
                              " window at index " + std::to_string(i));
        if (!(r[i] * window_slack < 1.0))
            throw ConfigError("schedule: r_t too close to 1 at index " +
                              std::to_string(i));
    }
}

}  // namespace siltlab
