#include <doctest.h>

#include <cmath>

#include "cusp/catalog.hpp"
#include "cusp/mat4.hpp"
#include "cusp/random.hpp"

using namespace cusp;

namespace {

Mat4 random_strict_upper(Rng& rng, double lo, double hi) {
    Mat4 X = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) X(i, j) = rng.uniform(lo, hi);
    return X;
}

// plain Taylor sum, no scaling
Mat4 naive_exp(const Mat4& X, int terms) {
    Mat4 sum = Mat4::Identity(), term = Mat4::Identity();
    for (int k = 1; k < terms; ++k) {
        term = term * X / k;
        sum += term;
    }
    return sum;
}

double maxabs(const Mat4& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("commutator of elementary matrices") {
    CHECK(maxabs(commutator(elementary(1, 2), elementary(1, 2))) == 0.0);
    CHECK(commutator(elementary(1, 2), elementary(2, 3)) == elementary(1, 3));
    auto g = family_chart(Family::N1).generators();
    CHECK(maxabs(commutator(g[0], g[1])) <= tol::mat);
}

TEST_CASE("exp_nilpotent matches a long power series") {
    Mat4 X = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) X(i, j) = 1.0;
    CHECK(maxabs(exp_nilpotent(X) - naive_exp(X, 20)) <= 1e-14);
    CHECK(exp_nilpotent(Mat4::Zero()) == Mat4::Identity());
}

TEST_CASE("exp_nilpotent corner of the unipotent cusp block") {
    for (auto [a, b, c] : {std::array{1.0, 2.0, 3.0}, std::array{0.5, -0.25, 0.0}, std::array{-3.0, 7.0, 1.5}}) {
        Mat4 X = a * elementary(1, 2) + b * elementary(1, 3) + c * elementary(1, 4) + a * elementary(2, 4) +
                 b * elementary(3, 4);
        CHECK(exp_nilpotent(X)(0, 3) == c + (a * a + b * b) / 2);
    }
}

TEST_CASE("exp_nilpotent rejects lower entries") {
    Mat4 X = elementary(2, 1);
    CHECK_THROWS_AS(exp_nilpotent(X), Error);
    CHECK_THROWS_AS(log_unipotent(Mat4::Identity() + elementary(3, 1)), Error);
}

TEST_CASE("nilpotent exp and log are inverse") {
    Rng rng(11);
    for (int k = 0; k < 100; ++k) {
        Mat4 X = random_strict_upper(rng, -2, 2);
        CHECK(maxabs(log_unipotent(exp_nilpotent(X)) - X) <= 1e-12);
        CHECK(maxabs(exp_nilpotent(X) * exp_nilpotent(-X) - Mat4::Identity()) <= 1e-13);
    }
    CHECK(maxabs(log_unipotent(Mat4::Identity())) == 0.0);
    Mat4 U = Mat4::Identity() + 2.5 * elementary(1, 4);
    CHECK(log_unipotent(U) == 2.5 * elementary(1, 4));
}

TEST_CASE("exp_triangular on diagonal and Jordan blocks") {
    Mat4 D = diag4(1.0, 2.0, 3.0, -6.0);
    Mat4 E = exp_triangular(D);
    for (int i = 0; i < 4; ++i) CHECK(E(i, i) == doctest::Approx(std::exp(D(i, i))).epsilon(1e-13));
    CHECK(exp_triangular(Mat4::Zero()) == Mat4::Identity());

    Mat4 J = 2.0 * (elementary(2, 2) + elementary(3, 3)) + 3.0 * elementary(2, 3) - 4.0 * elementary(4, 4);
    J(0, 0) = 0.0;
    Mat4 want = naive_exp(J, 60);
    CHECK(maxabs(exp_triangular(J) - want) <= 1e-10 * maxabs(want));
    CHECK(exp_triangular(J)(1, 2) == doctest::Approx(3.0 * std::exp(2.0)).epsilon(1e-13));
}

TEST_CASE("exp_triangular is a homomorphism on commuting pairs") {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        Mat4 X = rng.uniform(-1, 1) * diag4(1, 0, 0, -1) + rng.uniform(-2, 2) * elementary(2, 3);
        Mat4 Y = rng.uniform(-1, 1) * diag4(0, 1, 1, -2) + rng.uniform(-2, 2) * elementary(2, 3);
        REQUIRE(commutes(X, Y));
        CHECK(maxabs(exp_triangular(X + Y) - exp_triangular(X) * exp_triangular(Y)) <= 1e-10);
    }
}

TEST_CASE("projective rank of simple point sets") {
    std::vector<ProjPoint> one{ProjPoint::basis(1), ProjPoint::basis(1), ProjPoint::basis(1)};
    CHECK(projective_rank(one) == 1);
    std::vector<ProjPoint> line{ProjPoint::basis(1), ProjPoint::basis(2), ProjPoint(1, 1, 0, 0)};
    CHECK(projective_rank(line) == 2);
    CHECK_THROWS_AS(projective_rank(std::vector<ProjPoint>{}), Error);
}

TEST_CASE("projective rank ignores rescaling") {
    Rng rng(9);
    std::vector<Vec4> pts;
    for (int i = 0; i < 6; ++i) pts.emplace_back(rng.normal(), rng.normal(), 0.0, rng.normal());
    std::vector<ProjPoint> a, b;
    for (const auto& p : pts) {
        a.emplace_back(p);
        b.emplace_back(Vec4(p * rng.uniform(-1e3, 1e3)));
    }
    CHECK(projective_rank(a) == 3);
    CHECK(projective_rank(b) == 3);
}

TEST_CASE("ProjPoint canonicalization") {
    ProjPoint p(Vec4(-2.0, 1.0, 0.5, 2.0));
    CHECK(p.coords()(0) == 1.0);
    CHECK(canonicalize(p.coords()) == p.coords());
    CHECK(p.approx_equal(ProjPoint(Vec4(4.0, -2.0, -1.0, -4.0))));
    CHECK_THROWS_AS(ProjPoint(Vec4::Zero()), Error);
}

TEST_CASE("AlgebraBasis validation") {
    CHECK_NOTHROW(AlgebraBasis({elementary(1, 2), elementary(1, 3)}));
    try {
        AlgebraBasis({elementary(1, 2), elementary(2, 3)});
        FAIL("accepted a non-abelian pair");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAbelian);
        CHECK(std::string(e.what()).find("not abelian") != std::string::npos);
    }
    CHECK_THROWS_AS(AlgebraBasis({elementary(1, 2), 2.0 * elementary(1, 2)}), Error);
    CHECK_THROWS_AS(AlgebraBasis({elementary(1, 1), elementary(1, 2)}), Error);
}
