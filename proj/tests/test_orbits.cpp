#include <doctest.h>

#include "cusp/orbits.hpp"
#include "cusp/random.hpp"
#include "cusp/verify.hpp"

using namespace cusp;

TEST_CASE("act on projective points") {
    ProjPoint p(0.3, -1.0, 0.2, 0.5);
    CHECK(act(Mat4::Identity(), p).approx_equal(p));
    CHECK(act(diag4(2, 1, 1, 1), ProjPoint::basis(1)).approx_equal(ProjPoint::basis(1)));
    std::array<double, 2> ab{1.0, 0.0};
    Mat4 g = cusp_n_chart().element(ab);
    CHECK(act(g, ProjPoint::basis(4)).approx_equal(ProjPoint(0.5, 1.0, 0.0, 1.0)));
    CHECK_THROWS_AS(act(diag4(1, 1, 1, 0), p), Error);
}

TEST_CASE("orbit closure dimensions at table points") {
    CHECK(orbit_closure_dim(family_chart(Family::C), ProjPoint::basis(1)) == 0);
    CHECK(orbit_closure_dim(family_chart(Family::N8), ProjPoint(1, 0.4, -0.7, 0.9)) == 1);
    CHECK(orbit_closure_dim(family_chart(Family::N7), ProjPoint(1, 0.4, -0.7, 0)) == 0);
    CHECK(orbit_closure_dim(family_chart(Family::N7), ProjPoint(1, 0.4, -0.7, 0.9)) == 3);
    CHECK(orbit_closure_dim(family_chart(Family::C), ProjPoint(1, 1, 1, 1)) == 3);
}

TEST_CASE("orbit closure of F3 inside <e1,e2,e4> is a line") {
    // e3-component zero: only the diagonal part acts
    CHECK(orbit_closure_dim(family_chart(Family::F3), ProjPoint(1, 0.7, 0, 0.9)) == 1);
}

TEST_CASE("orbit closure of N2 through <e1,e2,e3> is a plane") {
    CHECK(orbit_closure_dim(family_chart(Family::N2), ProjPoint(1, 0.7, 1.3, 0)) == 2);
    CHECK(orbit_closure_dim(family_chart(Family::N2), ProjPoint(1, 0.7, 0, 0)) == 1);
}

TEST_CASE("closure signature of the diagonal family") {
    ClosureSignature s = closure_signature(family_chart(Family::C));
    auto battery = standard_battery();
    REQUIRE(s.dims.size() == battery.size());
    for (int i = 0; i < 4; ++i) CHECK(s.dims[static_cast<std::size_t>(i)] == 0);
    CHECK(s.dims.back() == 3);
    int sum = 0;
    for (int h : s.histogram) sum += h;
    CHECK(sum == static_cast<int>(battery.size()));
}

TEST_CASE("closure signature of N7") {
    ClosureSignature s = closure_signature(family_chart(Family::N7));
    auto battery = standard_battery();
    for (std::size_t i = 0; i < battery.size(); ++i) {
        if (battery[i].point(3) == 0.0) CHECK(s.dims[i] == 0);
        else if ((battery[i].point.array() != 0.0).all()) CHECK(s.dims[i] == 3);
    }
}

TEST_CASE("N4 and N4' have the same signature") {
    CHECK(closure_signature(family_chart(Family::N4)) == closure_signature(family_chart(Family::N4p)));
}

TEST_CASE("signature is invariant under conjugation with a moved battery") {
    Rng rng(8);
    for (Family f : catalog_families()) {
        Mat4 M = random_well_conditioned(rng, 20.0);
        GroupChart moved = family_chart(f).conjugated(M);
        CHECK(closure_signature(moved, M) == closure_signature(family_chart(f)));
    }
}

TEST_CASE("refining the grid never lowers the dimension") {
    SamplingConfig coarse, fine;
    coarse.points_per_axis = 3;
    fine.points_per_axis = 7;
    for (Family f : catalog_families()) {
        for (const auto& b : standard_battery()) {
            ProjPoint p(b.point);
            CHECK(orbit_closure_dim(family_chart(f), p, fine) >= orbit_closure_dim(family_chart(f), p, coarse));
        }
    }
}

TEST_CASE("fixed set dimension") {
    CHECK(fixed_set_dim(algebra_basis(Family::C).gens()) == 0);
    CHECK(fixed_set_dim(algebra_basis(Family::N7).gens()) == 2);
    CHECK(fixed_set_dim(algebra_basis(Family::N8).gens()) == 0);
}
