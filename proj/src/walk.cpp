#include "siltlab/walk.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace siltlab {

namespace {

constexpr int kFreeBits = 21;               // per-coordinate field width
constexpr int kFreeOffset = 1 << 20;        // shifts coordinates to >= 0
constexpr int64_t kFreeMask = (1 << kFreeBits) - 1;

// Sorted (key, value) snapshot so floating-point accumulation has a fixed
// order regardless of hash-map internals.
std::vector<std::pair<int64_t, double>> sorted_entries(
    const std::unordered_map<int64_t, double>& m) {
    std::vector<std::pair<int64_t, double>> v(m.begin(), m.end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

int64_t pack_site(const Geometry& g, const int* x) {
    if (g.kind == LatticeKind::free_lattice) {
        int64_t key = 0;
        for (int i = 0; i < g.d; ++i) {
            int64_t c = int64_t(x[i]) + kFreeOffset;
            key |= (c & kFreeMask) << (kFreeBits * i);
        }
        return key;
    }
    int64_t key = 0;
    for (int i = g.d - 1; i >= 0; --i) key = key * g.side + x[i];
    return key;
}

void unpack_site(const Geometry& g, int64_t key, int* x) {
    if (g.kind == LatticeKind::free_lattice) {
        for (int i = 0; i < g.d; ++i)
            x[i] = int((key >> (kFreeBits * i)) & kFreeMask) - kFreeOffset;
        return;
    }
    for (int i = 0; i < g.d; ++i) {
        x[i] = int(key % g.side);
        key /= g.side;
    }
}

double LocalTimeField::mass() const {
    long double s = 0;
    for (auto& [k, v] : sorted_entries(occupation)) s += v;
    return double(s);
}

double LocalTimeField::mass_error_bound() const {
    return std::numeric_limits<double>::epsilon() * double(jump_count + 2) *
           total_time;
}

LocalTimeField simulate_walk(const Geometry& g, double horizon, RngStream& rng) {
    if (!(horizon > 0)) throw ConfigError("simulate_walk: horizon must be > 0");
    if (g.d < 1) throw ConfigError("simulate_walk: d must be >= 1");
    if (g.kind == LatticeKind::free_lattice && g.d > 3)
        throw ConfigError("simulate_walk: free lattice supports d <= 3");
    if (g.kind == LatticeKind::torus && g.side < 1)
        throw ConfigError("simulate_walk: torus side must be >= 1");

    LocalTimeField f;
    f.geom = g;
    f.total_time = horizon;
    f.occupation.reserve(64);

    int x[6] = {0};
    int64_t key = pack_site(g, x);
    const double rate = 2.0 * g.d;
    const int two_d = 2 * g.d;
    long double elapsed = 0;

    for (;;) {
        double tau = rng.exponential(rate);
        if (elapsed + (long double)tau >= (long double)horizon) {
            double rest = double((long double)horizon - elapsed);
            auto [it, inserted] = f.occupation.try_emplace(key, rest);
            if (!inserted) it->second += rest;
            else if (rest == 0.0) f.occupation.erase(it);
            break;
        }
        f.occupation[key] += tau;
        elapsed += tau;
        ++f.jump_count;

        int dir = int(rng.below(two_d));
        int axis = dir >> 1;
        int step = (dir & 1) ? 1 : -1;
        if (g.kind == LatticeKind::free_lattice) {
            x[axis] += step;
            if (x[axis] >= kFreeOffset - 1 || x[axis] <= -(kFreeOffset - 1))
                throw ConfigError("simulate_walk: coordinate range exceeded");
        } else {
            x[axis] += step;
            if (x[axis] == g.side) x[axis] = 0;
            if (x[axis] == -1) x[axis] = g.side - 1;
        }
        key = pack_site(g, x);
    }
    return f;
}

LocalTimeField stop_at_exponential(const Geometry& g, double lambda,
                                   RngStream& rng) {
    if (!(lambda > 0)) throw ConfigError("stop_at_exponential: lambda must be > 0");
    double tau = rng.exponential(lambda);
    return simulate_walk(g, tau, rng);
}

double silt(const LocalTimeField& f, double p) {
    if (!(p > 1)) throw ConfigError("silt: p must be > 1");
    long double s = 0;
    for (auto& [k, v] : sorted_entries(f.occupation)) s += power_p(v, p);
    return double(s);
}

double lp_norm(const LocalTimeField& f, double p) {
    return std::pow(silt(f, p), 1.0 / p);
}

LocalTimeField fold_to_torus(const LocalTimeField& f, int side) {
    if (side < 1) throw ConfigError("fold_to_torus: side must be >= 1");
    if (f.geom.kind != LatticeKind::free_lattice)
        throw ConfigError("fold_to_torus: input must live on the free lattice");

    Geometry tg = Geometry::torus(f.geom.d, side);
    // Gather (torus key, source key, value), sort, and accumulate in fixed
    // order so the folded sums are deterministic.
    std::vector<std::pair<std::pair<int64_t, int64_t>, double>> items;
    items.reserve(f.occupation.size());
    int x[6];
    for (auto& [k, v] : f.occupation) {
        unpack_site(f.geom, k, x);
        int y[6];
        for (int i = 0; i < f.geom.d; ++i) {
            int m = x[i] % side;
            y[i] = m < 0 ? m + side : m;
        }
        items.push_back({{pack_site(tg, y), k}, v});
    }
    std::sort(items.begin(), items.end());

    LocalTimeField out;
    out.geom = tg;
    out.total_time = f.total_time;
    out.jump_count = f.jump_count;
    for (auto& [keys, v] : items) out.occupation[keys.first] += v;
    return out;
}

double RescaledProfile::mass() const {
    long double s = 0;
    for (auto& [k, v] : sorted_entries(values)) s += v;
    return double(s * std::pow((long double)alpha, -d));
}

double RescaledProfile::lp_norm(double p) const {
    long double s = 0;
    for (auto& [k, v] : sorted_entries(values)) s += power_p(v, p);
    return double(std::pow((double)(s * std::pow((long double)alpha, -d)), 1.0 / p));
}

RescaledProfile rescaled_profile(const LocalTimeField& f, double alpha, double t) {
    if (!(alpha > 0)) throw ConfigError("rescaled_profile: alpha must be > 0");
    if (f.total_time != t)
        throw ConfigError("rescaled_profile: field total_time does not equal t");
    RescaledProfile prof;
    prof.alpha = alpha;
    prof.t = t;
    prof.d = f.geom.d;
    double scale = std::pow(alpha, f.geom.d) / t;
    prof.values.reserve(f.occupation.size());
    for (auto& [k, v] : f.occupation) prof.values.emplace(k, scale * v);
    return prof;
}

}  // namespace siltlab
