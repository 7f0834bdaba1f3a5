#include "siltlab/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace siltlab {

namespace {

// Site index convention for green_row / dense_matrix / apply: coordinate i
// is digit i of the mixed-radix index, least significant first.
void unpack_index(int64_t idx, int d, int N, int* x) {
    for (int i = 0; i < d; ++i) {
        x[i] = int(idx % N);
        idx /= N;
    }
}

int64_t pack_index(const int* x, int d, int N) {
    int64_t idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * N + ((x[i] % N + N) % N);
    return idx;
}

// Mode odometer: advances k through {0..N-1}^d, returns false on wrap.
bool advance(std::vector<int>& k, int N) {
    size_t i = 0;
    while (i < k.size() && ++k[i] == N) {
        k[i] = 0;
        ++i;
    }
    return i < k.size();
}

constexpr int64_t kDenseCap = int64_t(1) << 14;

}  // namespace

GreenOperator::GreenOperator(int d, int N, double lambda)
    : d_(d), N_(N), lambda_(lambda) {
    if (d < 1) throw ConfigError("green: dimension must be >= 1");
    if (N < 1) throw ConfigError("green: torus side must be >= 1");
    if (!(lambda > 0.0)) throw ConfigError("green: lambda must be > 0");
    size_ = 1;
    for (int i = 0; i < d; ++i) {
        size_ *= N;
        if (size_ > (int64_t(1) << 24))
            throw ConfigError("green: N^d exceeds the mode-sum budget");
    }
    // Axis eigenvalues and cosine table, mirrored so that mu_k == mu_{N-k}
    // and cos(2 pi r / N) == cos(2 pi (N-r) / N) hold exactly in floating
    // point (the spectral sums then inherit exact reflection symmetry).
    axis_mu_.resize(N);
    cos_tab_.resize(N);
    for (int k = 0; k <= N / 2; ++k) {
        const double c = std::cos(2.0 * std::numbers::pi * k / N);
        axis_mu_[k] = 2.0 * (1.0 - c);
        axis_mu_[(N - k) % N] = axis_mu_[k];
        cos_tab_[k] = c;
        cos_tab_[(N - k) % N] = c;
    }
    axis_mu_[0] = 0.0;
    cos_tab_[0] = 1.0;
}

double GreenOperator::mu(const int* k) const {
    double m = 0.0;
    for (int i = 0; i < d_; ++i) m += axis_mu_[((k[i] % N_) + N_) % N_];
    return m;
}

double GreenOperator::spectral_gap() const {
    return N_ >= 2 ? axis_mu_[1] : 0.0;
}

double GreenOperator::green(const int* dx) const {
    std::vector<int> k(d_, 0);
    long double sum = 0.0L;
    do {
        double m = 0.0;
        int64_t r = 0;
        for (int i = 0; i < d_; ++i) {
            m += axis_mu_[k[i]];
            r += int64_t(k[i]) * dx[i];
        }
        sum += cos_tab_[(r % N_ + N_) % N_] / (lambda_ + m);
    } while (advance(k, N_));
    return double(sum / size_);
}

double GreenOperator::green00() const {
    std::vector<int> k(d_, 0);
    long double sum = 0.0L;
    do {
        double m = 0.0;
        for (int i = 0; i < d_; ++i) m += axis_mu_[k[i]];
        sum += 1.0 / (lambda_ + m);
    } while (advance(k, N_));
    return double(sum / size_);
}

double GreenOperator::heat_kernel(double s, const int* dx) const {
    if (s < 0.0) throw ConfigError("heat_kernel: s must be >= 0");
    if (s == 0.0) {
        for (int i = 0; i < d_; ++i)
            if (((dx[i] % N_) + N_) % N_ != 0) return 0.0;
        return 1.0;
    }
    std::vector<int> k(d_, 0);
    long double sum = 0.0L;
    do {
        double m = 0.0;
        int64_t r = 0;
        for (int i = 0; i < d_; ++i) {
            m += axis_mu_[k[i]];
            r += int64_t(k[i]) * dx[i];
        }
        sum += std::exp(-s * m) * cos_tab_[(r % N_ + N_) % N_];
    } while (advance(k, N_));
    return double(sum / size_);
}

std::vector<double> GreenOperator::green_row() const {
    if (size_ > kDenseCap)
        throw ConfigError("green: displacement table capped at 2^14 sites");
    std::vector<double> row(size_);
    std::vector<int> dx(d_);
    for (int64_t i = 0; i < size_; ++i) {
        unpack_index(i, d_, N_, dx.data());
        row[i] = green(dx.data());
    }
    return row;
}

double GreenOperator::sum_green() const {
    const std::vector<double> row = green_row();
    long double sum = 0.0L;
    for (double v : row) sum += v;
    return double(sum);
}

std::vector<double> GreenOperator::dense_matrix() const {
    const std::vector<double> row = green_row();
    std::vector<double> A(size_ * size_);
    std::vector<int> xi(d_), xj(d_), dd(d_);
    for (int64_t i = 0; i < size_; ++i) {
        unpack_index(i, d_, N_, xi.data());
        for (int64_t j = 0; j < size_; ++j) {
            unpack_index(j, d_, N_, xj.data());
            for (int t = 0; t < d_; ++t) dd[t] = xj[t] - xi[t];
            A[i * size_ + j] = row[pack_index(dd.data(), d_, N_)];
        }
    }
    return A;
}

std::vector<double> GreenOperator::apply(const std::vector<double>& f) const {
    if (int64_t(f.size()) != size_)
        throw ConfigError("green apply: vector length must equal N^d");
    const std::vector<double> row = green_row();
    std::vector<double> out(size_);
    std::vector<int> xi(d_), xj(d_), dd(d_);
    for (int64_t i = 0; i < size_; ++i) {
        unpack_index(i, d_, N_, xi.data());
        long double acc = 0.0L;
        for (int64_t j = 0; j < size_; ++j) {
            unpack_index(j, d_, N_, xj.data());
            for (int t = 0; t < d_; ++t) dd[t] = xj[t] - xi[t];
            acc += row[pack_index(dd.data(), d_, N_)] * f[j];
        }
        out[i] = double(acc);
    }
    return out;
}

double check_nash_bound(int N, int d, const std::vector<double>& s_grid) {
    if (s_grid.empty()) throw ConfigError("nash check: empty s grid");
    for (double s : s_grid)
        if (!(s > 0.0)) throw ConfigError("nash check: s grid must be positive");
    GreenOperator op(d, N, 1.0);  // lambda unused by the heat kernel
    std::vector<int> zero(d, 0);
    const double flat = std::pow(double(N), -double(d));
    double worst = 0.0;
    for (double s : s_grid) {
        const double stat = std::pow(s, 0.5 * d) *
                            std::abs(op.heat_kernel(s, zero.data()) - flat);
        worst = std::max(worst, stat);
    }
    return worst;
}

std::vector<GreenScalingRow> green_origin_scaling(
    int d, double a, double R, const std::vector<double>& alpha_grid) {
    if (!(a > 0.0) || !(R > 0.0))
        throw ConfigError("green scaling: a and R must be > 0");
    if (alpha_grid.empty())
        throw ConfigError("green scaling: empty alpha grid");
    for (size_t i = 1; i < alpha_grid.size(); ++i)
        if (!(alpha_grid[i] > alpha_grid[i - 1]))
            throw ConfigError("green scaling: alpha grid must increase");
    std::vector<GreenScalingRow> rows;
    rows.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const int N = int(std::lround(R * alpha));
        if (N < 2)
            throw ConfigError(
                "green scaling: torus side rounds below 2 at alpha=" +
                std::to_string(alpha));
        const double lambda = a / (alpha * alpha);
        GreenOperator op(d, N, lambda);
        rows.push_back({alpha, N, lambda, op.green00()});
    }
    return rows;
}

}  // namespace siltlab
