#pragma once

// Scalar backings for circle geometry: exact rationals (integral packings)
// and doubles (everything else). Conversions between the two are explicit.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace circlepack {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rat rat_of(long long n) { return Rat(n); }

// Exact square root of a non-negative rational; nullopt if it is not a
// perfect square.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    const Int num = numerator(r), den = denominator(r);
    const Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

// Parses "p", "-p" or "p/q". Throws on malformed input.
inline Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        const Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

inline std::string format_rational(const Rat& r) {
    const Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Round-trippable double formatting (17 significant digits).
std::string format_double(double x);
double parse_double(const std::string& s);

// Per-scalar policy: exactness flag, square roots, numeric parsing and the
// canonical serialization used by the packing file format.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat sqrt(const Rat& r) {
        auto s = exact_sqrt(r);
        if (!s) throw std::domain_error("rational square root is irrational: " + format_rational(r));
        return *s;
    }
    static Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
    static std::string format(const Rat& r) { return format_rational(r); }
    static Rat parse(const std::string& s) { return parse_rational(s); }
    static const char* backing_name() { return "rational"; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double sqrt(double x) {
        if (x < 0) {
            if (x > -1e-12) return 0.0;  // clamp tiny negative round-off
            throw std::domain_error("square root of negative value");
        }
        return std::sqrt(x);
    }
    static double abs(double x) { return std::fabs(x); }
    static std::string format(double x) { return format_double(x); }
    static double parse(const std::string& s) { return parse_double(s); }
    static const char* backing_name() { return "double"; }
};

// Raised when a generation run exceeds its configured circle budget.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace circlepack
