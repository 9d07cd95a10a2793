#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// closed-form geometry on centers and radii, a three-point Mobius image
// oracle, a self-contained brute-force packing enumerator, and the raw
// stereographic point map.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "circlepack/inversive.hpp"

namespace oracles {

using circlepack::Rat;

// Inversive product of two genuine circles from centers and radii:
// (r1^2 + r2^2 - dist^2) / (2 r1 r2), signed for orientations.
inline double product_closed_form(std::complex<double> c1, double r1, int o1, std::complex<double> c2,
                                  double r2, int o2) {
    const double d2 = std::norm(c1 - c2);
    return o1 * o2 * (r1 * r1 + r2 * r2 - d2) / (2 * r1 * r2);
}

// Unsigned geometric tangency between circle curves.
inline bool circles_tangent(std::complex<double> c1, double r1, std::complex<double> c2, double r2,
                            double tol = 1e-9) {
    const double d = std::abs(c1 - c2);
    return std::fabs(d - (r1 + r2)) <= tol || std::fabs(d - std::fabs(r1 - r2)) <= tol;
}

inline bool line_circle_tangent(std::complex<double> n, double offset, std::complex<double> c, double r,
                                double tol = 1e-9) {
    const double dist = std::fabs(c.real() * n.real() + c.imag() * n.imag() - offset);
    return std::fabs(dist - r) <= tol;
}

// Circle through three points (the classic circumcenter formulas).
inline std::optional<std::pair<std::complex<double>, double>> circumcircle(std::complex<double> a,
                                                                           std::complex<double> b,
                                                                           std::complex<double> c) {
    const double ax = a.real(), ay = a.imag(), bx = b.real(), by = b.imag(), cx = c.real(), cy = c.imag();
    const double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (std::fabs(d) < 1e-12) return std::nullopt;  // collinear
    const double ux =
        (std::norm(a) * (by - cy) + std::norm(b) * (cy - ay) + std::norm(c) * (ay - by)) / d;
    const double uy =
        (std::norm(a) * (cx - bx) + std::norm(b) * (ax - cx) + std::norm(c) * (bx - ax)) / d;
    const std::complex<double> center(ux, uy);
    return std::make_pair(center, std::abs(a - center));
}

// Raw inverse stereographic projection from the north pole onto S^2.
inline std::array<double, 3> stereographic_to_sphere(std::complex<double> z) {
    const double s2 = std::norm(z);
    return {2 * z.real() / (s2 + 1), 2 * z.imag() / (s2 + 1), (s2 - 1) / (s2 + 1)};
}

// ---------------------------------------------------------------------------
// Brute-force Apollonian enumeration with its own swap arithmetic: expands
// all four swaps from the seed, deduplicates whole quadruples, admits a
// quadruple while its largest curvature stays <= cutoff (for strips, also
// while it overlaps a generous window around one period), and collects every
// circle seen. Independent of the library's pruned walk.

using Vec4 = std::array<Rat, 4>;          // one circle: curv, cocurv, mx, my
using QuadVecs = std::array<Vec4, 4>;     // one quadruple

inline QuadVecs brute_swap(const QuadVecs& q, std::size_t i) {
    QuadVecs out = q;
    for (std::size_t coord = 0; coord < 4; ++coord) {
        Rat sum(0);
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) sum += q[j][coord];
        out[i][coord] = Rat(2) * sum - q[i][coord];
    }
    return out;
}

struct BruteResult {
    std::set<Vec4> circles;      // all circles with 0 < curv <= cutoff (strips: one period)
    long long quadruples = 0;
};

inline BruteResult brute_force_packing(const QuadVecs& seed, const Rat& cutoff, const Rat& period = Rat(0)) {
    auto canonical = [](QuadVecs q) {
        std::sort(q.begin(), q.end());
        return q;
    };
    auto max_curv = [](const QuadVecs& q) {
        Rat m = q[0][0];
        for (const auto& v : q) m = std::max(m, v[0]);
        return m;
    };
    // keep quadruples overlapping [-2L, 3L]: wider than the library's window
    // so any omission there shows up as a set mismatch
    auto in_window = [&](const QuadVecs& q) {
        if (period == 0) return true;
        for (const auto& v : q) {
            if (!(v[0] > 0)) continue;
            if (v[2] + 1 >= Rat(-2) * period * v[0] && v[2] - 1 <= Rat(3) * period * v[0]) return true;
        }
        return false;
    };
    auto keep_circle = [&](const Vec4& v) {
        if (!(v[0] > 0) || v[0] > cutoff) return false;
        if (period != 0 && (v[2] < 0 || v[2] >= period * v[0])) return false;
        return true;
    };

    BruteResult out;
    std::set<QuadVecs> seen;
    std::vector<QuadVecs> frontier{seed};
    seen.insert(canonical(seed));
    for (const auto& v : seed)
        if (keep_circle(v)) out.circles.insert(v);
    while (!frontier.empty()) {
        std::vector<QuadVecs> next;
        for (const auto& q : frontier) {
            for (std::size_t i = 0; i < 4; ++i) {
                QuadVecs child = brute_swap(q, i);
                if (max_curv(child) > cutoff || !in_window(child)) continue;
                if (!seen.insert(canonical(child)).second) continue;
                for (const auto& v : child)
                    if (keep_circle(v)) out.circles.insert(v);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    out.quadruples = static_cast<long long>(seen.size());
    return out;
}

inline Vec4 to_vec(const circlepack::RCircle& c) { return {c.curv, c.cocurv, c.mx, c.my}; }

inline QuadVecs to_vecs(const circlepack::DescartesQuadruple<Rat>& q) {
    return {to_vec(q.circles[0]), to_vec(q.circles[1]), to_vec(q.circles[2]), to_vec(q.circles[3])};
}

}  // namespace oracles
