#pragma once

// Counting and fitting: N_T(P,E) over regions, log-log exponent fits,
// region-ratio stabilization and the arithmetic statistics of integral
// packings (primes, twin primes, distinct curvatures, residue obstructions).
//
// Counting conventions: a circle is counted when its curve (not its disk)
// meets the region and 0 < curv < T, strictly. Lines and non-positive
// curvature circles never count; strip packings count one fundamental
// period.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circlepack/apollonian.hpp"
#include "circlepack/spherical.hpp"

namespace circlepack {

struct DiskRegion {
    double cx, cy, radius;
};
struct RectRegion {
    double x0, y0, x1, y1;  // well-ordered corners
};
struct PeriodWindow {};  // one period of a strip packing
struct CapRegion {
    std::array<double, 3> normal;
    double angle;  // angular radius, in (0, pi)
};

struct Region {
    std::variant<DiskRegion, RectRegion, PeriodWindow, CapRegion> shape;
    double tol = 0;  // containment slack

    static Region disk(double cx, double cy, double r) { return {DiskRegion{cx, cy, r}, 0}; }
    static Region rect(double x0, double y0, double x1, double y1);
    static Region period() { return {PeriodWindow{}, 0}; }
    static Region cap(const std::array<double, 3>& n, double angle) { return {CapRegion{n, angle}, 0}; }
    std::string describe() const;
};

// Whether the circle curve meets the region: for a convex region this is
// min_dist(center, E) <= radius <= max_dist(center, E).
bool circle_meets(double cx, double cy, double radius, const Region& region);

// #{C : C meets E, 0 < Curv(C) < T}. T must not exceed the generation
// cutoff; the count would silently miss circles otherwise.
template <class S>
long long count(const Packing<S>& p, const Region& region, double T) {
    if (S(T) > p.cutoff) throw std::invalid_argument("count: T exceeds the generation cutoff");
    if (std::holds_alternative<PeriodWindow>(region.shape) && !p.is_strip())
        throw std::invalid_argument("count: period window region requires a strip packing");
    if (std::holds_alternative<CapRegion>(region.shape))
        throw std::invalid_argument("count: spherical caps apply to spherical packings");
    long long n = 0;
    const bool whole = std::holds_alternative<PeriodWindow>(region.shape);
    for (const auto& c : p.circles) {
        if (!(to_double(c.curv) < T)) continue;
        if (whole) {
            ++n;
            continue;
        }
        const double k = to_double(c.curv);
        if (circle_meets(to_double(c.mx) / k, to_double(c.my) / k, 1.0 / k, region)) ++n;
    }
    return n;
}

// Spherical side of the same count: Curv_S < T among circles meeting a cap.
long long count_spherical(const std::vector<SphericalCircle>& circles, const Region& region, double T);

struct CountSeries {
    std::vector<double> ts;      // increasing
    std::vector<long long> counts;  // non-decreasing
    std::string region_desc;
};

template <class S>
CountSeries count_series(const Packing<S>& p, const Region& region, const std::vector<double>& t_grid,
                         int workers = 1) {
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1])) throw std::invalid_argument("count_series: grid must increase");
    CountSeries s;
    s.ts = t_grid;
    s.counts.assign(t_grid.size(), 0);
    s.region_desc = region.describe();
    parallel_chunks(t_grid.size(), resolve_workers(workers), 16,
                    [&](std::size_t, std::size_t b, std::size_t e) {
                        for (std::size_t i = b; i < e; ++i) s.counts[i] = count(p, region, t_grid[i]);
                    });
    return s;
}

// Geometric grid of n points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

struct FitResult {
    double exponent = 0;
    double intercept = 0;  // log N = exponent * log T + intercept
    double t_lo = 0, t_hi = 0;
    std::vector<double> ts;         // points inside the window
    std::vector<double> residuals;  // log N - fit, per point
};

// Least-squares slope of log N against log T over [t_lo, t_hi]. Needs at
// least 5 grid points with positive counts in the window.
FitResult fit_exponent(const CountSeries& s, double t_lo, double t_hi);

struct RatioSeries {
    std::vector<double> ts;
    std::vector<std::optional<double>> ratios;  // nullopt where the denominator vanishes

    // max/min over the trailing decade [t_max/10, t_max]
    double last_decade_spread() const;
};

// Pointwise N_T(e1)/N_T(e2); the asymptotic proportionality makes this
// stabilize for large T.
template <class S>
RatioSeries ratio_stability(const Packing<S>& p, const Region& e1, const Region& e2,
                            const std::vector<double>& t_grid, int workers = 1) {
    const CountSeries a = count_series(p, e1, t_grid, workers);
    const CountSeries b = count_series(p, e2, t_grid, workers);
    RatioSeries r;
    r.ts = t_grid;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (b.counts[i] == 0)
            r.ratios.push_back(std::nullopt);
        else
            r.ratios.push_back(static_cast<double>(a.counts[i]) / static_cast<double>(b.counts[i]));
    }
    return r;
}

bool is_prime_u64(std::uint64_t n);  // deterministic for all 64-bit inputs

namespace detail {

template <class S>
long long integer_curvature(const S& curv) {
    if constexpr (scalar_traits<S>::exact) {
        if (denominator(curv) != 1) throw std::invalid_argument("curvatures are not integral");
        return numerator(curv).template convert_to<long long>();
    } else {
        if (curv != std::rint(curv)) throw std::invalid_argument("curvatures are not integral");
        return llround(curv);
    }
}

}  // namespace detail

// Number of circles of prime curvature < T. Requires an integral primitive
// packing.
template <class S>
long long prime_pi(const Packing<S>& p, double T) {
    if (!is_integral(p)) throw std::invalid_argument("prime_pi: packing is not integral");
    if (S(T) > p.cutoff) throw std::invalid_argument("prime_pi: T exceeds the generation cutoff");
    long long n = 0;
    for (const auto& c : p.circles) {
        const long long k = detail::integer_curvature(c.curv);
        if (k > 0 && k < T && is_prime_u64(static_cast<std::uint64_t>(k))) ++n;
    }
    return n;
}

// Number of unordered tangent pairs with both curvatures prime and < T.
template <class S>
long long twin_prime_pi(const Packing<S>& p, double T) {
    if (!is_integral(p)) throw std::invalid_argument("twin_prime_pi: packing is not integral");
    long long n = 0;
    for (const auto& [i, j] : tangent_pairs(p, S(T))) {
        const long long a = detail::integer_curvature(p.at(static_cast<std::size_t>(i)).curv);
        const long long b = detail::integer_curvature(p.at(static_cast<std::size_t>(j)).curv);
        if (is_prime_u64(static_cast<std::uint64_t>(a)) && is_prime_u64(static_cast<std::uint64_t>(b))) ++n;
    }
    return n;
}

// Cardinality of the set (not multiset) of curvatures < T.
template <class S>
long long distinct_curvatures(const Packing<S>& p, double T) {
    if (!is_integral(p)) throw std::invalid_argument("distinct_curvatures: packing is not integral");
    if (S(T) > p.cutoff) throw std::invalid_argument("distinct_curvatures: T exceeds the generation cutoff");
    std::vector<long long> ks;
    for (const auto& c : p.circles) {
        const long long k = detail::integer_curvature(c.curv);
        if (k > 0 && k < T) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return static_cast<long long>(ks.size());
}

// Exhaustive scan of the Descartes form over (Z/m)^4, excluding all-even
// tuples. odd_histogram[i] counts surviving solutions with exactly i odd
// entries; the mod-16 obstruction says everything lands in odd_histogram[2].
struct ResidueReport {
    int modulus = 0;
    long long solutions = 0;        // Q = 0 (mod m), not all entries even
    long long all_even_excluded = 0;
    std::array<long long, 5> odd_histogram{};
    bool two_even_two_odd() const {
        return odd_histogram[0] == 0 && odd_histogram[1] == 0 && odd_histogram[3] == 0 &&
               odd_histogram[4] == 0;
    }
    std::string to_string() const;
};

ResidueReport residue_scan(int modulus);

}  // namespace circlepack
