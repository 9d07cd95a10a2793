#include "circlepack/inversive.hpp"

#include <charconv>
#include <cstdio>

namespace circlepack {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

DCircle apply_mobius(const MobiusMap& m, const DCircle& circle) {
    const MobiusMap n = invert(m);
    const std::complex<double> mom(circle.mx, circle.my);
    // H = [[k, -mom], [-conj(mom), w]], H' = N^dagger H N.
    const std::complex<double> h00 = circle.curv, h01 = -mom, h10 = -std::conj(mom),
                               h11 = circle.cocurv;
    // t = H N
    const std::complex<double> t00 = h00 * n.a + h01 * n.c;
    const std::complex<double> t01 = h00 * n.b + h01 * n.d;
    const std::complex<double> t10 = h10 * n.a + h11 * n.c;
    const std::complex<double> t11 = h10 * n.b + h11 * n.d;
    // H' = N^dagger t
    const std::complex<double> k = std::conj(n.a) * t00 + std::conj(n.c) * t10;
    const std::complex<double> w = std::conj(n.b) * t01 + std::conj(n.d) * t11;
    const std::complex<double> mp = -(std::conj(n.a) * t01 + std::conj(n.c) * t11);
    return {k.real(), w.real(), mp.real(), mp.imag()};
}

}  // namespace circlepack
