#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cusp/curvature.hpp"
#include "cusp/random.hpp"

using namespace cusp;

namespace {

FamilyParams rs(double r, double s) {
    FamilyParams p;
    p.rs = std::array<double, 2>{r, s};
    return p;
}

}  // namespace

TEST_CASE("paraboloid graph has det II = 4 at the vertex") {
    auto f = [](double a, double b) { return Vec3(a, b, a * a + b * b); };
    double err = 0.0;
    SurfaceJet jet = fd_jet(f, 1e-4, &err);
    CHECK(second_form_det(jet) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(err < 1e-6);
}

TEST_CASE("flat and saddle graphs") {
    CHECK(std::abs(second_form_det(fd_jet([](double a, double b) { return Vec3(a, b, a + 2 * b); }))) < 1e-8);
    CHECK(second_form_det(fd_jet([](double a, double b) { return Vec3(a, b, a * a - b * b); })) < 0);
    CHECK_THROWS_AS(second_form_det(fd_jet([](double a, double) { return Vec3(a, a, 0); })), Error);
}

TEST_CASE("exact jet agrees with finite differences") {
    Rng rng(2);
    for (Family f : {Family::C, Family::E1, Family::F1, Family::N4p}) {
        GroupChart chart = f == Family::C ? cusp_c_chart(ProjTriple(1, 2, 3)) : rs_plane_chart(f, 0.8, 0.1);
        OrbitSurface s(chart, Vec4(rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5), 1.0));
        SecondFormResult r = evaluate_second_form(s);
        CHECK(r.det_numeric == doctest::Approx(r.det_fd).epsilon(1e-5));
    }
}

TEST_CASE("E(1,0) at [1:1:1:1] is convex") {
    OrbitSurface s(rs_plane_chart(Family::E1, 1.0, 0.0), Vec4(1, 1, 1, 1));
    CHECK(second_form_det(s) > 0);
    CHECK(closed_form_detII(Family::E1, rs(1, 0), Vec3(1, 1, 1)) == 16.0);
}

TEST_CASE("closed form table entries") {
    FamilyParams c;
    c.rst = ProjTriple(1, 1, 1);
    double n = (*c.rst)[0];
    CHECK(closed_form_detII(Family::C, c, Vec3(1, 1, 1)) == doctest::Approx(3 * n * n * n * n));
    CHECK(closed_form_detII(Family::E1, rs(1, 0.5), Vec3(0.3, 1.2, 0.7)) == 0.0);
    CHECK(closed_form_detII(Family::N4p, {}, Vec3(0.3, 1.2, 0.7)) == 1.0);
    CHECK(closed_form_detII(Family::N4, {}, Vec3(0.3, 1.2, 0.7)) == -1.0);
    CHECK_THROWS_AS(closed_form_detII(Family::E1, {}, Vec3(1, 1, 1)), Error);
    CHECK_THROWS_AS(closed_form_detII(Family::CuspE, rs(1, 0), Vec3(1, 1, 1)), Error);
}

TEST_CASE("F2 planes are flat") {
    Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        OrbitSurface s(rs_plane_chart(Family::F2, rng.uniform(-2, 2), rng.uniform(-2, 2)),
                       Vec4(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2), 1.0));
        CHECK(std::abs(second_form_det(s)) <= tol::sign);
    }
}

TEST_CASE("convexity verdicts for plane subgroups") {
    CHECK(is_convex_orbit(AlgebraBasis(cusp_c_chart(ProjTriple(1, 1, 1)).generators())).verdict == Verdict::Convex);
    CHECK(is_convex_orbit(AlgebraBasis(rs_plane_chart(Family::E1, 1, 0.6).generators())).verdict != Verdict::Convex);
    CHECK(is_convex_orbit(AlgebraBasis(rs_plane_chart(Family::N4p, 0.3, -1.2).generators())).verdict == Verdict::Convex);
    CHECK(is_convex_orbit(AlgebraBasis(rs_plane_chart(Family::N4, 0.3, -1.2).generators())).verdict == Verdict::Indefinite);
    CHECK(is_convex_orbit(AlgebraBasis(rs_plane_chart(Family::F2, 0.3, -1.2).generators())).verdict == Verdict::Flat);
}

TEST_CASE("E(r, r/2) is flat") {
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        double r = rng.uniform(0.3, 2);
        OrbitSurface s(rs_plane_chart(Family::E1, r, r / 2),
                       Vec4(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2), 1.0));
        CHECK(std::abs(second_form_det(s)) <= 1e-8);
    }
}

TEST_CASE("sign is constant along the orbit") {
    Rng rng(5);
    GroupChart chart = rs_plane_chart(Family::E1, 1.0, 0.2);
    Vec4 p(1.1, 0.9, 1.3, 1.0);
    double d0 = second_form_det(OrbitSurface(chart, p));
    for (int k = 0; k < 10; ++k) {
        std::array<double, 2> u{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        Vec4 q = chart.element(u) * p;
        q /= q(3);
        CHECK((second_form_det(OrbitSurface(chart, q)) > 0) == (d0 > 0));
    }
}

TEST_CASE("Cusp:E leaf heights") {
    double r = 1.0, s = 0.0;
    Mesh m1 = horosphere_sample(Family::CuspE, rs(r, s), 1.0);
    Mesh me = horosphere_sample(Family::CuspE, rs(r, s), std::numbers::e);
    CHECK(me.origin(me.height_axis) - m1.origin(m1.height_axis) == doctest::Approx(0.25 * (4 + 2 * r + s)).epsilon(1e-12));
    CHECK(cusp_e_leaf_height(r, s, 1.0) == 0.0);
    CHECK_THROWS_AS(horosphere_sample(Family::CuspE, rs(r, s), 0.0), Error);
}

TEST_CASE("leaf meshes have positive curvature and valid faces") {
    FamilyParams pc;
    pc.rst = ProjTriple(1, 2, 3);
    for (auto [f, p] : {std::pair{Family::CuspC, pc}, std::pair{Family::CuspE, rs(1, 0.2)}, std::pair{Family::CuspF, rs(1, 0)},
                        std::pair{Family::CuspN, FamilyParams{}}}) {
        Mesh m = horosphere_sample(f, p, 1.0, 5);
        CHECK(m.vertices.size() == 25);
        CHECK(m.quads.size() == 16);
        for (double c : m.curvature) CHECK(c > 0);
        std::ostringstream obj;
        write_obj(obj, m);
        CHECK(obj.str().find("f 1 ") != std::string::npos);
    }
}
