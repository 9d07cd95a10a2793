#include "circlepack/statistics.hpp"

#include <cmath>
#include <sstream>

namespace circlepack {

Region Region::rect(double x0, double y0, double x1, double y1) {
    if (!(x0 < x1 && y0 < y1)) throw std::invalid_argument("rect region corners must be well ordered");
    return {RectRegion{x0, y0, x1, y1}, 0};
}

std::string Region::describe() const {
    std::ostringstream os;
    if (const auto* d = std::get_if<DiskRegion>(&shape))
        os << "disk(" << d->cx << "," << d->cy << ";" << d->radius << ")";
    else if (const auto* r = std::get_if<RectRegion>(&shape))
        os << "rect(" << r->x0 << "," << r->y0 << ";" << r->x1 << "," << r->y1 << ")";
    else if (std::holds_alternative<PeriodWindow>(shape))
        os << "period";
    else if (const auto* c = std::get_if<CapRegion>(&shape))
        os << "cap(" << c->normal[0] << "," << c->normal[1] << "," << c->normal[2] << ";" << c->angle
           << ")";
    return os.str();
}

bool circle_meets(double cx, double cy, double radius, const Region& region) {
    double dmin = 0, dmax = 0;
    if (const auto* d = std::get_if<DiskRegion>(&region.shape)) {
        const double dist = std::hypot(cx - d->cx, cy - d->cy);
        dmin = std::max(0.0, dist - d->radius);
        dmax = dist + d->radius;
    } else if (const auto* r = std::get_if<RectRegion>(&region.shape)) {
        const double dx = std::max({r->x0 - cx, 0.0, cx - r->x1});
        const double dy = std::max({r->y0 - cy, 0.0, cy - r->y1});
        dmin = std::hypot(dx, dy);
        double far = 0;
        for (const double x : {r->x0, r->x1})
            for (const double y : {r->y0, r->y1}) far = std::max(far, std::hypot(cx - x, cy - y));
        dmax = far;
    } else {
        throw std::invalid_argument("circle_meets: unsupported region shape");
    }
    return dmin <= radius + region.tol && radius <= dmax + region.tol;
}

long long count_spherical(const std::vector<SphericalCircle>& circles, const Region& region, double T) {
    const auto* cap = std::get_if<CapRegion>(&region.shape);
    if (!cap) throw std::invalid_argument("count_spherical: region must be a spherical cap");
    const double nl = std::sqrt(cap->normal[0] * cap->normal[0] + cap->normal[1] * cap->normal[1] +
                                cap->normal[2] * cap->normal[2]);
    if (nl < 1e-12 || !(cap->angle > 0) || !(cap->angle < M_PI))
        throw std::invalid_argument("count_spherical: malformed cap");
    long long n = 0;
    for (const auto& c : circles) {
        if (!(spherical_curvature(c) < T)) continue;
        const double dot = (cap->normal[0] * c.normal[0] + cap->normal[1] * c.normal[1] +
                            cap->normal[2] * c.normal[2]) /
                           nl;
        const double dist = std::acos(std::clamp(dot, -1.0, 1.0));  // center-to-center angle
        const double theta = std::acos(std::clamp(c.offset, -1.0, 1.0));
        const double lo = std::max(0.0, dist - cap->angle), hi = std::min(M_PI, dist + cap->angle);
        if (lo <= theta + region.tol && theta <= hi + region.tol) ++n;
    }
    return n;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0 && hi > lo && n >= 2)) throw std::invalid_argument("log_grid: need 0 < lo < hi, n >= 2");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                           static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

FitResult fit_exponent(const CountSeries& s, double t_lo, double t_hi) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit_exponent: degenerate window");
    std::vector<double> xs, ys, ts;
    for (std::size_t i = 0; i < s.ts.size(); ++i) {
        if (s.ts[i] < t_lo || s.ts[i] > t_hi) continue;
        if (s.counts[i] <= 0) throw std::invalid_argument("fit_exponent: zero count inside the window");
        ts.push_back(s.ts[i]);
        xs.push_back(std::log(s.ts[i]));
        ys.push_back(std::log(static_cast<double>(s.counts[i])));
    }
    if (xs.size() < 5) throw std::invalid_argument("fit_exponent: need at least 5 grid points in the window");
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_exponent: degenerate window");
    FitResult f;
    f.exponent = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.exponent * sx) / n;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.ts = std::move(ts);
    for (std::size_t i = 0; i < xs.size(); ++i)
        f.residuals.push_back(ys[i] - (f.exponent * xs[i] + f.intercept));
    return f;
}

double RatioSeries::last_decade_spread() const {
    if (ts.empty()) throw std::invalid_argument("ratio series is empty");
    const double cut = ts.back() / 10.0;
    double lo = 0, hi = 0;
    bool any = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < cut || !ratios[i]) continue;
        const double r = *ratios[i];
        if (!any) {
            lo = hi = r;
            any = true;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    if (!any || lo <= 0) throw std::invalid_argument("ratio series has no usable points in the last decade");
    return hi / lo;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for all 64-bit integers.
    for (const std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

ResidueReport residue_scan(int modulus) {
    if (modulus < 2) throw std::invalid_argument("residue_scan: modulus must be >= 2");
    const auto m = static_cast<long long>(modulus);
    ResidueReport rep;
    rep.modulus = modulus;
    for (long long a = 0; a < m; ++a)
        for (long long b = 0; b < m; ++b)
            for (long long c = 0; c < m; ++c)
                for (long long d = 0; d < m; ++d) {
                    const long long sum = a + b + c + d;
                    const long long q = 2 * (a * a + b * b + c * c + d * d) - sum * sum;
                    if (((q % m) + m) % m != 0) continue;
                    const int odd = static_cast<int>((a & 1) + (b & 1) + (c & 1) + (d & 1));
                    if (odd == 0) {  // all even: non-primitive
                        ++rep.all_even_excluded;
                        continue;
                    }
                    ++rep.solutions;
                    ++rep.odd_histogram[static_cast<std::size_t>(odd)];
                }
    return rep;
}

std::string ResidueReport::to_string() const {
    std::ostringstream os;
    os << "descartes form mod " << modulus << ": " << solutions << " solutions with some odd entry ("
       << all_even_excluded << " all-even excluded); odd-entry histogram [0..4] =";
    for (const auto v : odd_histogram) os << " " << v;
    os << "; two-even-two-odd " << (two_even_two_odd() ? "holds" : "fails");
    return os.str();
}

}  // namespace circlepack
