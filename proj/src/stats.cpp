#include "siltlab/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace siltlab {

double MeanAccumulator::se() const {
    if (n < 2) return 0.0;
    long double m = sum / n;
    long double var = (sumsq - n * m * m) / (n - 1);
    if (var < 0) var = 0;  // cancellation guard
    return double(std::sqrt((double)(var / n)));
}

BinomialCI binomial_ci(uint64_t hits, uint64_t n, double confidence) {
    if (n == 0) throw std::invalid_argument("binomial_ci: n = 0");
    if (hits > n) throw std::invalid_argument("binomial_ci: hits > n");
    double alpha = 1.0 - confidence;
    BinomialCI ci;
    double k = double(hits), m = double(n);
    if (hits > 0)
        ci.lo = boost::math::ibeta_inv(k, m - k + 1.0, alpha / 2);
    if (hits < n)
        ci.hi = boost::math::ibeta_inv(k + 1.0, m - k, 1.0 - alpha / 2);
    return ci;
}

double binomial_se(uint64_t hits, uint64_t n) {
    if (n == 0) return 0.0;
    double p = double(hits) / double(n);
    return std::sqrt(p * (1.0 - p) / double(n));
}

WlsFit wls_fit(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& sigma) {
    size_t n = x.size();
    if (y.size() != n || sigma.size() != n)
        throw std::invalid_argument("wls_fit: size mismatch");
    if (n < 2) throw std::invalid_argument("wls_fit: need at least 2 points");

    long double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!(sigma[i] > 0)) throw std::invalid_argument("wls_fit: sigma <= 0");
        long double w = 1.0L / ((long double)sigma[i] * sigma[i]);
        sw += w;
        swx += w * x[i];
        swy += w * y[i];
        swxx += w * x[i] * x[i];
        swxy += w * x[i] * y[i];
    }
    long double delta = sw * swxx - swx * swx;
    if (delta <= 0) throw std::invalid_argument("wls_fit: degenerate abscissae");

    WlsFit f;
    f.n_points = int(n);
    f.slope = double((sw * swxy - swx * swy) / delta);
    f.intercept = double((swxx * swy - swx * swxy) / delta);
    f.slope_se = double(std::sqrt((double)(sw / delta)));
    f.intercept_se = double(std::sqrt((double)(swxx / delta)));

    // R^2 against the weighted mean.
    long double ybar = swy / sw, ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; ++i) {
        long double w = 1.0L / ((long double)sigma[i] * sigma[i]);
        long double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += w * r * r;
        ss_tot += w * (y[i] - ybar) * (y[i] - ybar);
    }
    f.r_squared = ss_tot > 0 ? double(1.0L - ss_res / ss_tot) : 1.0;

    // Curvature: mean residual of middle third minus mean residual overall.
    size_t a = n / 3, b = n - n / 3;
    long double mid = 0, out = 0;
    size_t nm = 0, no = 0;
    for (size_t i = 0; i < n; ++i) {
        long double r = y[i] - (f.intercept + f.slope * x[i]);
        if (i >= a && i < b) {
            mid += r;
            ++nm;
        } else {
            out += r;
            ++no;
        }
    }
    if (nm && no) f.curvature = double(mid / nm - out / no);
    return f;
}

double gaussian_abs_moment_2p(double p) {
    if (!(p > 0)) throw std::invalid_argument("gaussian_abs_moment_2p: p <= 0");
    return std::pow(2.0, p) * boost::math::tgamma(p + 0.5) /
           std::sqrt(3.14159265358979323846264338327950288);
}

}  // namespace siltlab
