#pragma once

// Circles on the unit sphere and the stereographic transfer from the plane.
//
// A spherical circle is the slice {p in S^2 : <p, normal> = t} with
// 0 <= t < 1; its spherical radius is theta = arccos(t) in (0, pi/2] and its
// spherical curvature cot(theta). Transfer uses inverse stereographic
// projection from the north pole (0,0,1) onto the equatorial plane, under
// which a planar circle with curvature k and co-curvature w lands on the
// slice with cot(theta) = (k + w)/2.

#include <array>

#include "circlepack/inversive.hpp"

namespace circlepack {

struct SphericalCircle {
    std::array<double, 3> normal{0, 0, 1};
    double offset = 0;     // t = cos(theta), normalized to t >= 0
    double sin_theta = 1;  // cached alongside t; tiny 1-t^2 would lose precision
};

// Normalizes |normal| = 1 and t >= 0 (flipping the normal when needed).
SphericalCircle make_spherical(const std::array<double, 3>& normal, double t);

inline double spherical_curvature(const SphericalCircle& c) { return c.offset / c.sin_theta; }

// arccosh(1 / sin theta): hyperbolic distance from the ball-model origin to
// the convex hull of the circle.
double hyperbolic_depth(const SphericalCircle& c);

SphericalCircle to_sphere(const DCircle& c);
DCircle from_sphere(const SphericalCircle& c);

// descartes_form + 4; vanishes on spherical curvatures of four mutually
// tangent circles (the spherical Soddy-Gossett identity).
inline double soddy_gossett_residual(double a, double b, double c, double d) {
    return descartes_form(a, b, c, d) + 4.0;
}

// The circles meet in exactly one point: the angular distance of the centers
// equals theta1 + theta2 or |theta1 - theta2|.
bool spherical_tangent(const SphericalCircle& c1, const SphericalCircle& c2, double tol = 1e-9);

// Same slice of the sphere, regardless of orientation; great circles (t = 0)
// compare equal under either normal.
bool same_spherical_circle(const SphericalCircle& a, const SphericalCircle& b, double tol = 1e-9);

}  // namespace circlepack
