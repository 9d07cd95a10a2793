#pragma once

// Circles and lines in inversive coordinates, Descartes quadruples and the
// Mobius action.
//
// A circle or line is the 4-vector (curv, cocurv, mx, my) on the Lorentz
// quadric
//
//     mx^2 + my^2 - curv * cocurv = 1,
//
// where curv is the signed curvature (1/radius; 0 for lines; negative for a
// circle enclosing the rest of its packing), cocurv is the curvature of the
// image under inversion in the unit circle, and (mx, my) is curvature times
// center (for lines: the unit normal, with cocurv twice the signed offset
// from the origin).
//
// Sign conventions used throughout:
//   * inversive_product(u, u) = +1,
//   * externally tangent circles (disjoint interiors) have product -1,
//   * circles with disjoint interiors and no contact have product < -1.
// The "interior" of a line is the side its normal points to, and inversion
// in the unit circle exactly exchanges curv and cocurv.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "circlepack/numeric.hpp"

namespace circlepack {

template <class S>
struct InversiveCircle {
    S curv{};
    S cocurv{};
    S mx{};
    S my{};

    bool is_line() const { return curv == S(0); }

    friend bool operator==(const InversiveCircle& a, const InversiveCircle& b) {
        return a.curv == b.curv && a.cocurv == b.cocurv && a.mx == b.mx && a.my == b.my;
    }
};

using RCircle = InversiveCircle<Rat>;
using DCircle = InversiveCircle<double>;

// 2(a^2+b^2+c^2+d^2) - (a+b+c+d)^2; vanishes exactly on curvature quadruples
// of four mutually tangent circles.
template <class S>
S descartes_form(const S& a, const S& b, const S& c, const S& d) {
    const S sum = a + b + c + d;
    return S(2) * (a * a + b * b + c * c + d * d) - sum * sum;
}

// Double overload evaluates in extended precision; the form is a difference
// of large near-equal terms for spherical-curvature quadruples.
inline double descartes_form(double a, double b, double c, double d) {
    const long double la = a, lb = b, lc = c, ld = d;
    const long double sum = la + lb + lc + ld;
    return static_cast<double>(2.0L * (la * la + lb * lb + lc * lc + ld * ld) - sum * sum);
}

template <class S>
S quadric_residual(const InversiveCircle<S>& c) {
    return c.mx * c.mx + c.my * c.my - c.curv * c.cocurv - S(1);
}

template <class S>
InversiveCircle<S> make_circle(const S& cx, const S& cy, const S& radius, int orientation = 1) {
    if (!(radius > S(0))) throw std::invalid_argument("make_circle: radius must be positive");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("make_circle: orientation must be +-1");
    const S k = S(orientation) / radius;
    return {k, k * (cx * cx + cy * cy) - S(orientation) * radius, k * cx, k * cy};
}

template <class S>
InversiveCircle<S> make_line(const S& nx, const S& ny, const S& offset) {
    if (nx * nx + ny * ny != S(1)) {
        if constexpr (scalar_traits<S>::exact) {
            throw std::invalid_argument("make_line: normal must be a unit vector");
        } else {
            if (scalar_traits<S>::abs(nx * nx + ny * ny - S(1)) > S(1e-12))
                throw std::invalid_argument("make_line: normal must be a unit vector");
        }
    }
    return {S(0), S(2) * offset, nx, ny};
}

template <class S>
struct CenterRadius {
    S cx, cy, radius;
};

// nullopt signals a line.
template <class S>
std::optional<CenterRadius<S>> center_radius(const InversiveCircle<S>& c) {
    if (c.is_line()) return std::nullopt;
    return CenterRadius<S>{c.mx / c.curv, c.my / c.curv, S(1) / scalar_traits<S>::abs(c.curv)};
}

// Bilinear form of the quadric. +1 on the diagonal, -1 for external
// tangency, < -1 for circles with disjoint closed disks.
template <class S>
S inversive_product(const InversiveCircle<S>& u, const InversiveCircle<S>& v) {
    return u.mx * v.mx + u.my * v.my - (u.curv * v.cocurv + v.curv * u.cocurv) / S(2);
}

template <class S>
bool is_tangent(const InversiveCircle<S>& u, const InversiveCircle<S>& v, const S& tol = S(0)) {
    return scalar_traits<S>::abs(inversive_product(u, v) + S(1)) <= tol;
}

template <class S>
struct DescartesQuadruple {
    std::array<InversiveCircle<S>, 4> circles;

    std::array<S, 4> curvatures() const {
        return {circles[0].curv, circles[1].curv, circles[2].curv, circles[3].curv};
    }
};

// Reflection replacing member i by the other circle tangent to the remaining
// three: v_i' = 2(v_j + v_k + v_l) - v_i on all four coordinates. An exact
// involution; preserves the quadric and all tangencies.
template <class S>
DescartesQuadruple<S> swap_at(const DescartesQuadruple<S>& q, std::size_t i) {
    if (i >= 4) throw std::out_of_range("swap_at: index must be in 0..3");
    DescartesQuadruple<S> out = q;
    InversiveCircle<S> twice_others{};
    for (std::size_t j = 0; j < 4; ++j) {
        if (j == i) continue;
        twice_others.curv += q.circles[j].curv;
        twice_others.cocurv += q.circles[j].cocurv;
        twice_others.mx += q.circles[j].mx;
        twice_others.my += q.circles[j].my;
    }
    out.circles[i].curv = S(2) * twice_others.curv - q.circles[i].curv;
    out.circles[i].cocurv = S(2) * twice_others.cocurv - q.circles[i].cocurv;
    out.circles[i].mx = S(2) * twice_others.mx - q.circles[i].mx;
    out.circles[i].my = S(2) * twice_others.my - q.circles[i].my;
    return out;
}

namespace detail {

// Solves the 3x4 system <v, c_i> = -1 (tangency to all three inputs),
// returning a particular solution and a kernel vector of the associated
// homogeneous system. Row order of the Lorentz form on (curv, cocurv, mx, my):
// <u, v> = -u.curv*v.cocurv/2 - u.cocurv*v.curv/2 + u.mx*v.mx + u.my*v.my.
template <class S>
void tangency_system(const std::array<InversiveCircle<S>, 3>& cs,
                     std::array<S, 4>& particular, std::array<S, 4>& kernel) {
    // Augmented matrix rows: coefficients of (curv, cocurv, mx, my) and rhs.
    std::array<std::array<S, 5>, 3> m;
    for (std::size_t r = 0; r < 3; ++r) {
        m[r] = {-cs[r].cocurv / S(2), -cs[r].curv / S(2), cs[r].mx, cs[r].my, S(-1)};
    }
    // Gauss-Jordan with full pivoting over the 4 columns.
    std::array<std::size_t, 4> col_of_row{4, 4, 4, 4};  // pivot column per row
    std::array<bool, 4> pivoted{false, false, false, false};
    for (std::size_t r = 0; r < 3; ++r) {
        std::size_t pr = r, pc = 4;
        S best = S(0);
        for (std::size_t rr = r; rr < 3; ++rr) {
            for (std::size_t cc = 0; cc < 4; ++cc) {
                if (pivoted[cc]) continue;
                const S mag = scalar_traits<S>::abs(m[rr][cc]);
                if (mag > best) { best = mag; pr = rr; pc = cc; }
            }
        }
        if (pc == 4 || best == S(0)) throw std::invalid_argument("degenerate tangency system");
        std::swap(m[r], m[pr]);
        pivoted[pc] = true;
        col_of_row[r] = pc;
        const S inv_piv = S(1) / m[r][pc];
        for (std::size_t cc = 0; cc < 5; ++cc) m[r][cc] = m[r][cc] * inv_piv;
        for (std::size_t rr = 0; rr < 3; ++rr) {
            if (rr == r) continue;
            const S f = m[rr][pc];
            if (f == S(0)) continue;
            for (std::size_t cc = 0; cc < 5; ++cc) m[rr][cc] -= f * m[r][cc];
        }
    }
    std::size_t free_col = 0;
    while (pivoted[free_col]) ++free_col;
    particular = {S(0), S(0), S(0), S(0)};
    kernel = {S(0), S(0), S(0), S(0)};
    kernel[free_col] = S(1);
    for (std::size_t r = 0; r < 3; ++r) {
        particular[col_of_row[r]] = m[r][4];
        kernel[col_of_row[r]] = -m[r][free_col];
    }
}

template <class S>
InversiveCircle<S> from_vec(const std::array<S, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
}

template <class S>
S lorentz_self(const std::array<S, 4>& v) {
    return v[2] * v[2] + v[3] * v[3] - v[0] * v[1];
}

template <class S>
S lorentz_cross(const std::array<S, 4>& u, const std::array<S, 4>& v) {
    return u[2] * v[2] + u[3] * v[3] - (u[0] * v[1] + u[1] * v[0]) / S(2);
}

}  // namespace detail

// The two circles tangent to three mutually tangent circles: the three
// tangency conditions are linear on the quadric, so the solutions form the
// intersection of an affine line with the quadric. The pair sums to
// 2(v1+v2+v3) componentwise. Returned ordered by (curv, mx, my); a doubly
// tangent degenerate configuration comes back as an equal pair.
template <class S>
std::pair<InversiveCircle<S>, InversiveCircle<S>> apollonius_pair(
    const InversiveCircle<S>& c1, const InversiveCircle<S>& c2, const InversiveCircle<S>& c3,
    const S& tol = scalar_traits<S>::exact ? S(0) : S(1e-9)) {
    const std::array<InversiveCircle<S>, 3> cs{c1, c2, c3};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (!is_tangent(cs[i], cs[j], tol))
                throw std::invalid_argument("apollonius_pair: inputs are not mutually tangent");

    std::array<S, 4> p, n;
    detail::tangency_system(cs, p, n);
    // <p + t n, p + t n> = 1, a quadratic a t^2 + b t + c = 0.
    const S a = detail::lorentz_self(n);
    const S b = S(2) * detail::lorentz_cross(p, n);
    const S c = detail::lorentz_self(p) - S(1);
    if (a == S(0)) throw std::invalid_argument("apollonius_pair: degenerate configuration");
    S disc = b * b - S(4) * a * c;
    if constexpr (!scalar_traits<S>::exact) {
        if (disc < 0 && disc > -1e-9) disc = 0;
    }
    const S root = scalar_traits<S>::sqrt(disc);
    const S t1 = (-b + root) / (S(2) * a);
    const S t2 = (-b - root) / (S(2) * a);
    auto at = [&](const S& t) {
        return InversiveCircle<S>{p[0] + t * n[0], p[1] + t * n[1], p[2] + t * n[2], p[3] + t * n[3]};
    };
    InversiveCircle<S> u = at(t1), v = at(t2);
    auto key_less = [](const InversiveCircle<S>& x, const InversiveCircle<S>& y) {
        if (x.curv != y.curv) return x.curv < y.curv;
        if (x.mx != y.mx) return x.mx < y.mx;
        return x.my < y.my;
    };
    if (key_less(v, u)) std::swap(u, v);
    return {u, v};
}

// ---------------------------------------------------------------------------
// Mobius maps (floating backing only).

struct MobiusMap {
    std::complex<double> a{1}, b{0}, c{0}, d{1};

    // Normalized so that ad - bc = 1.
    static MobiusMap from_coefficients(std::complex<double> a, std::complex<double> b,
                                       std::complex<double> c, std::complex<double> d) {
        const std::complex<double> det = a * d - b * c;
        if (std::abs(det) < 1e-14) throw std::invalid_argument("mobius map is singular");
        const std::complex<double> s = std::sqrt(det);
        return MobiusMap{a / s, b / s, c / s, d / s};
    }

    static MobiusMap identity() { return MobiusMap{}; }

    std::complex<double> apply(std::complex<double> z) const { return (a * z + b) / (c * z + d); }
};

inline MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
    return MobiusMap{m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                     m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

inline MobiusMap invert(const MobiusMap& m) { return MobiusMap{m.d, -m.b, -m.c, m.a}; }

// Image circle under a Mobius map, computed through the Hermitian-matrix
// form of the circle: H = [[k, -m], [-conj(m), w]] transforms as N* H N with
// N the inverse map. Lines through the pole come back as valid lines.
DCircle apply_mobius(const MobiusMap& m, const DCircle& circle);

// Explicit backing conversions.
inline DCircle to_floating(const RCircle& c) {
    return {to_double(c.curv), to_double(c.cocurv), to_double(c.mx), to_double(c.my)};
}

inline DescartesQuadruple<double> to_floating(const DescartesQuadruple<Rat>& q) {
    return {{to_floating(q.circles[0]), to_floating(q.circles[1]), to_floating(q.circles[2]),
             to_floating(q.circles[3])}};
}

}  // namespace circlepack
