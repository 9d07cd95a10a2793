#include <doctest.h>

#include <cmath>

#include "circlepack/statistics.hpp"

using namespace circlepack;

namespace {

Packing<Rat> packing_1223(long long cutoff) {
    const auto seed =
        realize_root(reduce_to_root(CurvatureQuadruple<Rat>{{Rat(-1), Rat(2), Rat(2), Rat(3)}}));
    return generate(seed, Rat(cutoff));
}

}  // namespace

TEST_CASE("count: worked examples on (-1,2,2,3)") {
    const auto p = packing_1223(10);
    CHECK(count(p, Region::disk(0, 0, 1), 3.5) == 4);  // the 2s and 3s all meet the unit disk
    CHECK(count(p, Region::disk(0, 0, 1), 1.5) == 0);  // below the smallest curvature
    // whole outer disk at T = 10: the full multiset {2,2,3,3,6,6,6,6}
    CHECK(count(p, Region::disk(0, 0, 1), 10) == static_cast<long long>(p.circles.size()));
    CHECK_THROWS_AS(count(p, Region::disk(0, 0, 1), 11), std::invalid_argument);
    CHECK_THROWS_AS(count(p, Region::period(), 5), std::invalid_argument);  // not a strip
}

TEST_CASE("count: curve-meets-region semantics") {
    const auto p = packing_1223(10);
    // a small disk straddling the left curvature-2 circle's boundary
    CHECK(count(p, Region::disk(-1, 0, 0.05), 3) == 1);
    // a disk strictly inside that circle's interior: its curve stays outside
    CHECK(count(p, Region::disk(-0.5, 0, 0.05), 10) == 0);
    // a disk containing everything
    CHECK(count(p, Region::disk(0, 0, 5), 10) == static_cast<long long>(p.circles.size()));
    // rectangle around the top curvature-3 circle
    CHECK(count(p, Region::rect(-0.05, 0.3, 0.05, 1.05), 4) == 1);
}

TEST_CASE("count series: monotone, deterministic across workers") {
    const auto p = packing_1223(100);
    const auto grid = log_grid(2, 100, 12);
    const auto s1 = count_series(p, Region::disk(0, 0, 1), grid, 1);
    const auto s8 = count_series(p, Region::disk(0, 0, 1), grid, 8);
    CHECK(s1.counts == s8.counts);
    for (std::size_t i = 0; i + 1 < s1.counts.size(); ++i) CHECK(s1.counts[i] <= s1.counts[i + 1]);
    CHECK_THROWS_AS(count_series(p, Region::disk(0, 0, 1), {10, 10}, 1), std::invalid_argument);
}

TEST_CASE("strip counting uses the period window") {
    const auto seed = realize_root(reduce_to_root(CurvatureQuadruple<Rat>{{Rat(0), Rat(0), Rat(1), Rat(1)}}));
    const auto p = generate(seed, Rat(10));
    CHECK(count(p, Region::period(), 10) == 7);  // {1,4,4,9,9,9,9}
    CHECK(count(p, Region::period(), 2) == 1);
    // a sub-rectangle of the period: just the circle at (0,1) and the two 4s
    CHECK(count(p, Region::rect(0.0, 0.0, 1.5, 2.0), 5) == 3);
}

TEST_CASE("fit_exponent: exact on synthetic power laws") {
    CountSeries s;
    for (int k = 1; k <= 12; ++k) {
        s.ts.push_back(std::pow(2.0, k));
        s.counts.push_back(1ll << (2 * k));  // N = T^2 exactly
    }
    const auto f = fit_exponent(s, 2, 4096);
    CHECK(std::fabs(f.exponent - 2.0) <= 1e-12);
    for (const double r : f.residuals) CHECK(std::fabs(r) <= 1e-12);
    CHECK_THROWS_AS(fit_exponent(s, 4096, 2), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent(s, 2, 8), std::invalid_argument);  // too few points
    CountSeries z = s;
    z.counts[3] = 0;
    CHECK_THROWS_AS(fit_exponent(z, 2, 4096), std::invalid_argument);
}

TEST_CASE("ratio stability: identities and containment") {
    const auto p = packing_1223(200);
    const auto grid = log_grid(10, 200, 10);
    const auto same = ratio_stability(p, Region::disk(0, 0, 0.8), Region::disk(0, 0, 0.8), grid);
    for (const auto& r : same.ratios) {
        REQUIRE(r.has_value());
        CHECK(*r == 1.0);
    }
    CHECK(same.last_decade_spread() == 1.0);
    const auto nested = ratio_stability(p, Region::disk(0, 0, 0.9), Region::disk(0.3, 0.2, 0.3), grid);
    for (const auto& r : nested.ratios)
        if (r) CHECK(*r >= 1.0);
    // a denominator region that meets nothing at small T
    const auto sparse =
        ratio_stability(p, Region::disk(0, 0, 1), Region::disk(0.02, 0.45, 0.01), {3, 4, 5});
    CHECK(!sparse.ratios[0].has_value());
}

TEST_CASE("prime and twin prime counts on (-1,2,2,3)") {
    const auto p = packing_1223(10);
    CHECK(prime_pi(p, 10) == 4);       // 2, 2, 3, 3
    CHECK(twin_prime_pi(p, 10) == 5);  // {2,2} and four {2,3}
    CHECK(prime_pi(p, 3) == 2);
    CHECK(distinct_curvatures(p, 10) == 3);  // {2, 3, 6}
    CHECK(distinct_curvatures(p, 7) == 3);
    CHECK(distinct_curvatures(p, 3) == 1);

    const auto scaled = generate(
        realize_root(reduce_to_root(CurvatureQuadruple<Rat>{{Rat(-1, 2), Rat(1), Rat(1), Rat(3, 2)}})),
        Rat(10));
    CHECK_THROWS_AS(prime_pi(scaled, 5), std::invalid_argument);
    CHECK_THROWS_AS(distinct_curvatures(scaled, 5), std::invalid_argument);
}

TEST_CASE("prime counts grow and stay dominated by totals") {
    const auto p = packing_1223(2000);
    long long prev = 0;
    for (const double t : {10.0, 100.0, 1000.0}) {
        const auto pi = prime_pi(p, t);
        CHECK(pi > prev);
        CHECK(pi <= count(p, Region::disk(0, 0, 1), t));
        prev = pi;
    }
    CHECK(twin_prime_pi(p, 100) <= static_cast<long long>(tangent_pairs(p, Rat(100)).size()));
    CHECK(distinct_curvatures(p, 2000) >= distinct_curvatures(p, 1000));
}

TEST_CASE("deterministic 64-bit primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));    // Carmichael
    CHECK(!is_prime_u64(29341));  // Carmichael
    CHECK(is_prime_u64(1000003));
    CHECK(is_prime_u64((1ull << 61) - 1));  // Mersenne prime
    CHECK(!is_prime_u64((1ull << 61) + 1));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
}

TEST_CASE("residue scan: the mod-16 obstruction and the mod-2 structure") {
    const auto r16 = residue_scan(16);
    CHECK(r16.modulus == 16);
    CHECK(r16.two_even_two_odd());
    CHECK(r16.solutions > 0);
    CHECK(r16.solutions + r16.all_even_excluded <= 65536);
    CHECK(r16.odd_histogram[2] == r16.solutions);
    // (15,2,2,3) is a surviving solution shape: two even, two odd
    const long long q = 2 * (15 * 15 + 4 + 4 + 9) - (15 + 2 + 2 + 3) * (15 + 2 + 2 + 3);
    CHECK(((q % 16) + 16) % 16 == 0);

    // mod 2 the form degenerates to parity: solutions have an even number of
    // odd entries, so the two-even-two-odd claim is specific to 16
    const auto r2 = residue_scan(2);
    CHECK(r2.odd_histogram[1] == 0);
    CHECK(r2.odd_histogram[3] == 0);
    CHECK(r2.odd_histogram[4] > 0);
    CHECK(!r2.two_even_two_odd());
    CHECK_THROWS_AS(residue_scan(1), std::invalid_argument);
}

TEST_CASE("spherical cap counting and transfer equivariance") {
    const auto p = packing_1223(50);
    std::vector<SphericalCircle> transferred;
    for (const auto& c : p.circles) transferred.push_back(to_sphere(to_floating(c)));
    // a cap that covers the whole sphere: counts by spherical curvature only
    const auto whole = Region::cap({0, 0, 1}, 3.14);
    for (const double t : {1.0, 2.0, 5.0, 26.0}) {
        long long planar_side = 0;
        for (const auto& c : p.circles)
            if (spherical_curvature(to_sphere(to_floating(c))) < t) ++planar_side;
        CHECK(count_spherical(transferred, whole, t) == planar_side);
    }
    // a cap near the north pole sees only circles whose slices pass near it:
    // the equator (image of the unit circle) is out of a small polar cap
    const std::vector<SphericalCircle> eq{to_sphere(make_circle(0.0, 0.0, 1.0))};
    CHECK(count_spherical(eq, Region::cap({0, 0, 1}, 0.3), 1) == 0);
    CHECK(count_spherical(eq, Region::cap({1, 0, 0}, 0.3), 1) == 1);
    CHECK_THROWS_AS(count_spherical(eq, Region::disk(0, 0, 1), 1), std::invalid_argument);
}
