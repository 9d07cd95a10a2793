#include <doctest.h>

#include <random>

#include "circlepack/inversive.hpp"
#include "oracles.hpp"

using namespace circlepack;

TEST_CASE("descartes form on known quadruples") {
    CHECK(descartes_form(Rat(-1), Rat(2), Rat(2), Rat(3)) == 0);
    CHECK(descartes_form(Rat(0), Rat(0), Rat(1), Rat(1)) == 0);
    CHECK(descartes_form(Rat(1), Rat(1), Rat(1), Rat(1)) == -8);
    CHECK(descartes_form(1.0, 1.0, 1.0, 1.0) == doctest::Approx(-8.0));
}

TEST_CASE("make_circle and make_line invariants") {
    const auto unit = make_circle(Rat(0), Rat(0), Rat(1));
    CHECK(unit.curv == 1);
    CHECK(unit.cocurv == -1);
    CHECK(unit.mx == 0);
    CHECK(unit.my == 0);

    const auto c = make_circle(Rat(2), Rat(0), Rat(1));
    CHECK(c.cocurv == 3);
    CHECK(c.mx == 2);
    CHECK(quadric_residual(c) == 0);  // 4 - 3 = 1

    const auto line = make_line(Rat(0), Rat(1), Rat(0));
    CHECK(line.curv == 0);
    CHECK(line.cocurv == 0);
    CHECK(line.my == 1);
    CHECK(quadric_residual(line) == 0);

    CHECK_THROWS_AS(make_circle(Rat(0), Rat(0), Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(make_line(Rat(0), Rat(2), Rat(0)), std::invalid_argument);
}

TEST_CASE("center_radius inverts make_circle; lines are flagged") {
    const auto cr = center_radius(RCircle{Rat(1), Rat(-1), Rat(0), Rat(0)});
    REQUIRE(cr.has_value());
    CHECK(cr->cx == 0);
    CHECK(cr->radius == 1);
    const auto cr2 = center_radius(RCircle{Rat(1), Rat(3), Rat(2), Rat(0)});
    REQUIRE(cr2.has_value());
    CHECK(cr2->cx == 2);
    CHECK(cr2->cy == 0);
    CHECK(cr2->radius == 1);
    CHECK(!center_radius(make_line(Rat(0), Rat(1), Rat(5))).has_value());
}

TEST_CASE("inversive product: diagonal, tangent and separated circles") {
    const auto u = make_circle(Rat(0), Rat(0), Rat(1));
    CHECK(inversive_product(u, u) == 1);

    const auto v = make_circle(Rat(2), Rat(0), Rat(1));
    CHECK(inversive_product(u, v) == -1);
    const auto far = make_circle(Rat(6), Rat(0), Rat(1));
    CHECK(inversive_product(u, far) == -17);

    // closed-form oracle on centers and radii, including the signs
    const double p1 = oracles::product_closed_form({0, 0}, 1, 1, {2, 0}, 1, 1);
    const double p2 = oracles::product_closed_form({0, 0}, 1, 1, {6, 0}, 1, 1);
    CHECK(p1 == doctest::Approx(-1));
    CHECK(p2 == doctest::Approx(-17));

    CHECK(inversive_product(u, v) == inversive_product(v, u));
}

TEST_CASE("is_tangent matches geometric tangency") {
    const auto u = make_circle(Rat(0), Rat(0), Rat(1));
    CHECK(is_tangent(u, make_circle(Rat(2), Rat(0), Rat(1))));
    CHECK(!is_tangent(u, make_circle(Rat(3), Rat(0), Rat(1))));

    // line y = 0 with its normal pointing away from the circle at (5, 1)
    const auto line = make_line(Rat(0), Rat(-1), Rat(0));
    const auto c = make_circle(Rat(5), Rat(1), Rat(1));
    CHECK(is_tangent(line, c));
    CHECK(oracles::line_circle_tangent({0, 1}, 0, {5, 1}, 1));
}

TEST_CASE("swap: curvature action and involution") {
    // the (-1,2,2,3) configuration: outer circle, two halves, top circle
    DescartesQuadruple<Rat> q{{make_circle(Rat(0), Rat(0), Rat(1), -1),
                               make_circle(Rat(-1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(0), Rat(2) / 3, Rat(1) / 3)}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(is_tangent(q.circles[i], q.circles[j]));

    const auto s0 = swap_at(q, 0);
    CHECK(s0.circles[0].curv == 15);  // 2(2+2+3) - (-1)
    const auto s1 = swap_at(q, 1);
    CHECK(s1.circles[1].curv == 6);  // 2(-1+2+3) - 2
    const auto s3 = swap_at(q, 3);
    CHECK(s3.circles[3].curv == 3);  // the twin curvature-3 circle
    CHECK(s3.circles[3].my == -2);   // mirrored below the x-axis

    for (std::size_t i = 0; i < 4; ++i) {
        const auto back = swap_at(swap_at(q, i), i);
        for (std::size_t j = 0; j < 4; ++j) CHECK(back.circles[j] == q.circles[j]);
    }
    CHECK_THROWS_AS(swap_at(q, 4), std::out_of_range);
}

TEST_CASE("random swap words keep the quadric and the Descartes form exactly") {
    DescartesQuadruple<Rat> q{{make_circle(Rat(0), Rat(0), Rat(1), -1),
                               make_circle(Rat(-1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(0), Rat(2) / 3, Rat(1) / 3)}};
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<std::size_t> slot(0, 3);
    int checked = 0;
    for (int word = 0; word < 2000; ++word) {
        auto cur = q;
        for (int step = 0; step < 12; ++step) {
            cur = swap_at(cur, slot(rng));
            const auto k = cur.curvatures();
            CHECK(descartes_form(k[0], k[1], k[2], k[3]) == 0);
            for (const auto& c : cur.circles) CHECK(quadric_residual(c) == 0);
            ++checked;
        }
    }
    CHECK(checked == 24000);
}

TEST_CASE("apollonius pair: strip configuration and sum identity") {
    const auto l1 = make_line(Rat(0), Rat(-1), Rat(0));
    const auto l2 = make_line(Rat(0), Rat(1), Rat(2));
    const auto c = make_circle(Rat(0), Rat(1), Rat(1));
    const auto [u, v] = apollonius_pair(l1, l2, c);

    // geometric oracle: both tangent to everything, at (-2,1) and (2,1)
    const auto ucr = center_radius(u), vcr = center_radius(v);
    REQUIRE(ucr.has_value());
    REQUIRE(vcr.has_value());
    CHECK(ucr->cx == -2);
    CHECK(ucr->cy == 1);
    CHECK(ucr->radius == 1);
    CHECK(vcr->cx == 2);
    CHECK(vcr->radius == 1);
    CHECK(oracles::circles_tangent({-2, 1}, 1, {0, 1}, 1));

    // curvature sum d + d' = 2(0 + 0 + 1), here both equal 1
    CHECK(u.curv + v.curv == 2);
    CHECK(u.curv == 1);
    // full componentwise identity v+ + v- = 2(v1+v2+v3)
    CHECK(u.cocurv + v.cocurv == 2 * (l1.cocurv + l2.cocurv + c.cocurv));
    CHECK(u.mx + v.mx == 2 * (l1.mx + l2.mx + c.mx));
    CHECK(u.my + v.my == 2 * (l1.my + l2.my + c.my));

    for (const auto& sol : {u, v}) {
        CHECK(quadric_residual(sol) == 0);
        CHECK(is_tangent(sol, l1));
        CHECK(is_tangent(sol, l2));
        CHECK(is_tangent(sol, c));
    }
}

TEST_CASE("apollonius pair: the two curvature-3 circles of (-1,2,2,3)") {
    const auto outer = make_circle(Rat(0), Rat(0), Rat(1), -1);
    const auto left = make_circle(Rat(-1) / 2, Rat(0), Rat(1) / 2);
    const auto right = make_circle(Rat(1) / 2, Rat(0), Rat(1) / 2);
    const auto [u, v] = apollonius_pair(outer, left, right);
    CHECK(u.curv == 3);
    CHECK(v.curv == 3);
    CHECK(u.my + v.my == 0);
    const auto ucr = center_radius(u);
    CHECK(ucr->radius == Rat(1) / 3);
    CHECK(scalar_traits<Rat>::abs(ucr->cy) == Rat(2) / 3);

    CHECK_THROWS_AS(apollonius_pair(outer, left, make_circle(Rat(10), Rat(0), Rat(1))),
                    std::invalid_argument);
}

TEST_CASE("mobius maps: identity, translation, inversion") {
    const auto unit = make_circle(0.0, 0.0, 1.0);
    const auto id = MobiusMap::identity();
    const auto img = apply_mobius(id, unit);
    CHECK(img.curv == doctest::Approx(1.0));
    CHECK(img.cocurv == doctest::Approx(-1.0));

    const auto shift = MobiusMap::from_coefficients({1, 0}, {1, 0}, {0, 0}, {1, 0});
    const auto shifted = apply_mobius(shift, unit);
    const auto cr = center_radius(shifted);
    CHECK(cr->cx == doctest::Approx(1.0));
    CHECK(cr->cy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cr->radius == doctest::Approx(1.0));

    // z -> 1/z on the circle at (2,0) radius 1: image points 1 and 1/3
    const auto inv = MobiusMap::from_coefficients({0, 0}, {1, 0}, {1, 0}, {0, 0});
    const auto c = make_circle(2.0, 0.0, 1.0);
    const auto ic = center_radius(apply_mobius(inv, c));
    CHECK(ic->cx == doctest::Approx(2.0 / 3));
    CHECK(ic->radius == doctest::Approx(1.0 / 3));
}

TEST_CASE("mobius maps: line through the pole stays a valid encoding") {
    // z -> 1/z sends the circle through the origin at (1,0) to a line
    const auto inv = MobiusMap::from_coefficients({0, 0}, {1, 0}, {1, 0}, {0, 0});
    const auto through_pole = make_circle(1.0, 0.0, 1.0);
    const auto img = apply_mobius(inv, through_pole);
    CHECK(std::fabs(img.curv) < 1e-12);
    CHECK(std::fabs(quadric_residual(img)) < 1e-9);
    // the image is the vertical line x = 1/2: unit normal, (1/2, 0) on it
    CHECK(std::fabs(img.mx * img.mx + img.my * img.my - 1) < 1e-9);
    CHECK(std::fabs(0.5 * img.mx - img.cocurv / 2) < 1e-9);
}

TEST_CASE("mobius image agrees with the three-point oracle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> entry(-2, 2), geom(-3, 3), rad(0.2, 2.0);
    int done = 0;
    while (done < 300) {
        MobiusMap m;
        try {
            m = MobiusMap::from_coefficients({entry(rng), entry(rng)}, {entry(rng), entry(rng)},
                                             {entry(rng), entry(rng)}, {entry(rng), entry(rng)});
        } catch (const std::invalid_argument&) {
            continue;
        }
        const std::complex<double> center(geom(rng), geom(rng));
        const double r = rad(rng);
        const auto img = apply_mobius(m, make_circle(center.real(), center.imag(), r));
        const auto p0 = m.apply(center + std::complex<double>(r, 0));
        const auto p1 = m.apply(center + std::complex<double>(0, r));
        const auto p2 = m.apply(center - std::complex<double>(r, 0));
        const auto oc = oracles::circumcircle(p0, p1, p2);
        if (!oc || img.curv == 0 || std::fabs(img.curv) < 1e-3) continue;  // near-line images
        const auto cr = center_radius(img);
        CHECK(std::abs(cr->cx - oc->first.real()) < 1e-6 * (1 + oc->second));
        CHECK(std::abs(cr->cy - oc->first.imag()) < 1e-6 * (1 + oc->second));
        CHECK(std::fabs(cr->radius - oc->second) < 1e-6 * (1 + oc->second));
        ++done;
    }
}

TEST_CASE("mobius action preserves the quadric and tangency") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> entry(-4, 4), geom(-3, 3), rad(0.2, 2.0);
    int maps = 0;
    double worst_quadric = 0, worst_tangency = 0;
    while (maps < 1000) {
        MobiusMap m;
        try {
            m = MobiusMap::from_coefficients({entry(rng), entry(rng)}, {entry(rng), entry(rng)},
                                             {entry(rng), entry(rng)}, {entry(rng), entry(rng)});
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++maps;
        // a tangent pair: a circle and its rightward tangent neighbor
        const std::complex<double> c1(geom(rng), geom(rng));
        const double r1 = rad(rng), r2 = rad(rng);
        const auto u = make_circle(c1.real(), c1.imag(), r1);
        const auto v = make_circle(c1.real() + r1 + r2, c1.imag(), r2);
        const auto mu = apply_mobius(m, u), mv = apply_mobius(m, v);
        worst_quadric = std::max({worst_quadric, std::fabs(quadric_residual(mu)),
                                  std::fabs(quadric_residual(mv))});
        worst_tangency = std::max(worst_tangency, std::fabs(inversive_product(mu, mv) + 1));
    }
    CHECK(worst_quadric < 1e-9);
    CHECK(worst_tangency < 1e-6);
}

TEST_CASE("compose and invert satisfy the group laws") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> entry(-2, 2);
    for (int i = 0; i < 50; ++i) {
        MobiusMap a, b;
        try {
            a = MobiusMap::from_coefficients({entry(rng), entry(rng)}, {entry(rng), entry(rng)},
                                             {entry(rng), entry(rng)}, {entry(rng), entry(rng)});
            b = MobiusMap::from_coefficients({entry(rng), entry(rng)}, {entry(rng), entry(rng)},
                                             {entry(rng), entry(rng)}, {entry(rng), entry(rng)});
        } catch (const std::invalid_argument&) {
            continue;
        }
        const std::complex<double> z(entry(rng), entry(rng));
        const auto ab = compose(a, b);
        CHECK(std::abs(ab.apply(z) - a.apply(b.apply(z))) < 1e-9);
        const auto aia = compose(invert(a), a);
        CHECK(std::abs(aia.apply(z) - z) < 1e-9);
        CHECK(std::abs(a.a * a.d - a.b * a.c - std::complex<double>(1, 0)) < 1e-12);
    }
}

TEST_CASE("quadric preservation across bulk random swap and mobius calls") {
    // rational swaps: exactly on the quadric
    DescartesQuadruple<Rat> q{{make_circle(Rat(0), Rat(0), Rat(1), -1),
                               make_circle(Rat(-1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(1) / 2, Rat(0), Rat(1) / 2),
                               make_circle(Rat(0), Rat(2) / 3, Rat(1) / 3)}};
    std::mt19937 rng(404);
    std::uniform_int_distribution<std::size_t> slot(0, 3);
    for (int i = 0; i < 50000; ++i) {
        q = swap_at(q, slot(rng));
        if ((i & 1023) == 0)
            for (const auto& c : q.circles) CHECK(quadric_residual(c) == 0);
    }
    for (const auto& c : q.circles) CHECK(quadric_residual(c) == 0);

    // floating mobius images: within 1e-9
    std::uniform_real_distribution<double> entry(-3, 3), geom(-3, 3), rad(0.2, 2.0);
    double worst = 0;
    int done = 0;
    while (done < 50000) {
        MobiusMap m;
        try {
            m = MobiusMap::from_coefficients({entry(rng), entry(rng)}, {entry(rng), entry(rng)},
                                             {entry(rng), entry(rng)}, {entry(rng), entry(rng)});
        } catch (const std::invalid_argument&) {
            continue;
        }
        const auto img = apply_mobius(m, make_circle(geom(rng), geom(rng), rad(rng)));
        worst = std::max(worst, std::fabs(quadric_residual(img)));
        ++done;
    }
    CHECK(worst <= 1e-9);
}
