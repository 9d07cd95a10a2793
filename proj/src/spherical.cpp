#include "circlepack/spherical.hpp"

#include <cmath>
#include <stdexcept>

namespace circlepack {

SphericalCircle make_spherical(const std::array<double, 3>& normal, double t) {
    const double len = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]);
    if (len < 1e-12) throw std::invalid_argument("make_spherical: zero normal");
    double sign = t < 0 ? -1.0 : 1.0;
    SphericalCircle c;
    for (int i = 0; i < 3; ++i) c.normal[i] = sign * normal[i] / len;
    c.offset = sign * t;
    if (c.offset >= 1) throw std::invalid_argument("make_spherical: |t| must be < 1");
    c.sin_theta = std::sqrt((1 - c.offset) * (1 + c.offset));
    return c;
}

double hyperbolic_depth(const SphericalCircle& c) { return std::acosh(1.0 / c.sin_theta); }

SphericalCircle to_sphere(const DCircle& c) {
    // The image of {k|z|^2 - 2<m,z> + w = 0} under inverse stereographic
    // projection lies on the plane 2*mx*p1 + 2*my*p2 + (w-k)*p3 = k+w, and
    // the quadric normalization gives |(2mx, 2my, w-k)| = sqrt(4 + (k+w)^2).
    // Evaluated in extended precision: the acceptance identities run this on
    // curvatures up to 1e3 where squares eat half the double mantissa.
    const long double k = c.curv, w = c.cocurv;
    const long double raw = k + w;
    const long double denom = sqrtl(4.0L + raw * raw);
    SphericalCircle s;
    const long double sign = raw < 0 ? -1.0L : 1.0L;
    s.normal[0] = static_cast<double>(sign * 2.0L * static_cast<long double>(c.mx) / denom);
    s.normal[1] = static_cast<double>(sign * 2.0L * static_cast<long double>(c.my) / denom);
    s.normal[2] = static_cast<double>(sign * (w - k) / denom);
    s.offset = static_cast<double>(sign * raw / denom);
    s.sin_theta = static_cast<double>(2.0L / denom);
    return s;
}

DCircle from_sphere(const SphericalCircle& c) {
    const long double lam = 2.0L / static_cast<long double>(c.sin_theta);
    const long double t = c.offset, n3 = c.normal[2];
    DCircle out;
    out.curv = static_cast<double>(lam * (t - n3) / 2.0L);
    out.cocurv = static_cast<double>(lam * (t + n3) / 2.0L);
    out.mx = static_cast<double>(lam * static_cast<long double>(c.normal[0]) / 2.0L);
    out.my = static_cast<double>(lam * static_cast<long double>(c.normal[1]) / 2.0L);
    return out;
}

bool spherical_tangent(const SphericalCircle& c1, const SphericalCircle& c2, double tol) {
    const double dot = c1.normal[0] * c2.normal[0] + c1.normal[1] * c2.normal[1] +
                       c1.normal[2] * c2.normal[2];
    const double tt = c1.offset * c2.offset;
    const double ss = c1.sin_theta * c2.sin_theta;
    return std::fabs(dot - (tt + ss)) <= tol || std::fabs(dot - (tt - ss)) <= tol;
}

bool same_spherical_circle(const SphericalCircle& a, const SphericalCircle& b, double tol) {
    auto close = [&](double sign) {
        return std::fabs(a.normal[0] - sign * b.normal[0]) <= tol &&
               std::fabs(a.normal[1] - sign * b.normal[1]) <= tol &&
               std::fabs(a.normal[2] - sign * b.normal[2]) <= tol &&
               std::fabs(a.offset - sign * b.offset) <= tol;
    };
    return close(1.0) || (a.offset <= tol && close(-1.0));
}

}  // namespace circlepack
