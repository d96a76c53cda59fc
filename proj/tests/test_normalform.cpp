#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cusp/normalform.hpp"
#include "cusp/random.hpp"

using namespace cusp;

namespace {

// All 24 orderings of alpha and of -alpha; keep the one with three positive entries sorted down and the negative last.
std::array<double, 3> brute_force(double r, double s, double t) {
    std::array<double, 4> alpha{r, s, t, -(r + s + t)};
    std::array<int, 4> idx{0, 1, 2, 3};
    std::array<double, 3> best{};
    int hits = 0;
    do {
        for (double sg : {1.0, -1.0}) {
            std::array<double, 4> a{};
            for (int k = 0; k < 4; ++k) a[static_cast<std::size_t>(k)] = sg * alpha[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            if (a[0] >= a[1] && a[1] >= a[2] && a[2] > 0 && a[3] < 0) {
                double n = std::hypot(a[0], a[1], a[2]);
                best = {a[0] / n, a[1] / n, a[2] / n};
                ++hits;
            }
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    REQUIRE(hits > 0);
    return best;
}

std::array<double, 3> random_convex(Rng& rng) {
    for (;;) {
        double r = rng.uniform(-3, 3), s = rng.uniform(-3, 3), t = rng.uniform(-3, 3);
        double R = r + s + t;
        if (r * s * t * R > 0 && std::min({std::abs(r), std::abs(s), std::abs(t), std::abs(R)}) > 1e-3) return {r, s, t};
    }
}

}  // namespace

TEST_CASE("normalize_C examples") {
    CHECK(normalize_C(ProjTriple(1, 2, 3)).display == std::array<double, 3>{3, 2, 1});
    CHECK(normalize_C(ProjTriple(1, 1, -3)).display == std::array<double, 3>{1, 1, 1});
    CHECK(normalize_C(ProjTriple(1, 1, 1)).display == std::array<double, 3>{1, 1, 1});
    CHECK_THROWS_AS(normalize_C(ProjTriple(1, -0.5, 1)), Error);
    CHECK_THROWS_AS(normalize_C(ProjTriple(1, 0, 1)), Error);
}

TEST_CASE("normalize_C agrees with brute force") {
    Rng rng(1000);
    for (int i = 0; i < 1000; ++i) {
        auto [r, s, t] = random_convex(rng);
        CNormalForm c = normalize_C(ProjTriple(r, s, t));
        auto bf = brute_force(r, s, t);
        for (int k = 0; k < 3; ++k) CHECK(c.canonical[k] == doctest::Approx(bf[static_cast<std::size_t>(k)]).epsilon(1e-12));
        CHECK(normalize_C(c.canonical).canonical.v() == c.canonical.v());
        CHECK(c.canonical[0] >= c.canonical[1]);
        CHECK(c.canonical[1] >= c.canonical[2]);
        CHECK(c.canonical[2] > 0);
    }
}

TEST_CASE("normalize_C certificates") {
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        auto [r, s, t] = random_convex(rng);
        CNormalForm c = normalize_C(ProjTriple(r, s, t));
        Mat4 M = c.permutation.matrix();
        CHECK((M.cwiseAbs().colwise().sum().array() == 1.0).all());
        ConjugacyCheck chk = verify_conjugacy(c.certificate, 50, static_cast<std::uint64_t>(i));
        CHECK(chk.ok);
        CHECK(chk.max_residual <= 1e-10);
    }
}

TEST_CASE("equal canonicals iff one orbit") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        auto [r, s, t] = random_convex(rng);
        std::array<double, 4> alpha{r, s, t, -(r + s + t)};
        std::array<int, 4> perm{0, 1, 2, 3};
        for (int k = 3; k > 0; --k) std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(rng.index(k + 1))]);
        double scale = rng.uniform(0.5, 2) * (rng.unit() < 0.5 ? -1 : 1);
        std::array<double, 4> b{};
        for (int k = 0; k < 4; ++k) b[static_cast<std::size_t>(k)] = scale * alpha[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        CHECK(normalize_C(ProjTriple(b[0], b[1], b[2])).canonical.approx_equal(normalize_C(ProjTriple(r, s, t)).canonical, 1e-12));
        auto [r2, s2, t2] = random_convex(rng);
        auto x = brute_force(r, s, t), y = brute_force(r2, s2, t2);
        bool same = std::abs(x[0] - y[0]) + std::abs(x[1] - y[1]) + std::abs(x[2] - y[2]) < 1e-9;
        CHECK(normalize_C(ProjTriple(r, s, t)).canonical.approx_equal(normalize_C(ProjTriple(r2, s2, t2)).canonical) == same);
    }
}

TEST_CASE("normalize_E examples") {
    ENormalForm a = normalize_E(1, 0.3);
    CHECK(a.s_prime == doctest::Approx(0.3));
    CHECK(a.Q == Mat4::Identity());
    CHECK_FALSE(a.flipped);
    ENormalForm b = normalize_E(-2, 0.6);
    CHECK(b.s_prime == doctest::Approx(0.3));
    CHECK(b.flipped);
    CHECK(verify_conjugacy(b.certificate).ok);
    CHECK(normalize_E(1, 0).s_prime == 0.0);
    CHECK_THROWS_AS(normalize_E(1, 0.5), Error);
    CHECK_THROWS_AS(normalize_E(0, 0), Error);
}

TEST_CASE("normalize_E domain, idempotence and orbits") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        double r = rng.uniform(0.2, 3) * (rng.unit() < 0.5 ? -1 : 1);
        double s = rng.uniform(-0.49, 0.49) * std::abs(r);
        ENormalForm e = normalize_E(r, s);
        CHECK(e.s_prime >= 0);
        CHECK(e.s_prime < 0.5);
        CHECK(normalize_E(1, e.s_prime).s_prime == e.s_prime);
        CHECK(verify_conjugacy(e.certificate, 20, static_cast<std::uint64_t>(i)).ok);
        // Q-scalings and the flip only change the ratio by a sign
        double lam = rng.uniform(0.3, 3) * (rng.unit() < 0.5 ? -1 : 1);
        CHECK(normalize_E(lam * r, (rng.unit() < 0.5 ? -1 : 1) * lam * s).s_prime == doctest::Approx(e.s_prime).epsilon(1e-14));
    }
}

TEST_CASE("normalize_F examples") {
    FNormalForm id = normalize_F(1, 0);
    CHECK(id.certificate.conjugator == Mat4::Identity());
    FNormalForm s = normalize_F(1, 2);
    CHECK(s.S(1, 2) == 2.0);
    CHECK(s.R == Mat4::Identity());
    FNormalForm r = normalize_F(4, 0);
    CHECK(r.R(0, 0) == 0.5);
    CHECK(r.R(2, 2) == 2.0);
    CHECK_THROWS_AS(normalize_F(-1, 0), Error);
    CHECK_THROWS_AS(normalize_F(0, 1), Error);
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        FNormalForm f = normalize_F(rng.uniform(0.1, 4), rng.uniform(-3, 3));
        CHECK(verify_conjugacy(f.certificate, 20, static_cast<std::uint64_t>(i)).ok);
    }
}

TEST_CASE("single certificates") {
    CHECK(verify_conjugacy(certificate_P(1.3, 0.2)).ok);
    CHECK(verify_conjugacy(certificate_Q(-0.7, 0.2)).ok);
    CHECK(verify_conjugacy(certificate_R(2.5)).ok);
    CHECK(verify_conjugacy(certificate_S(0.4, -1.5)).ok);
    CHECK(verify_conjugacy(identity_certificate(cusp_n_chart())).max_residual <= 1e-15);
    CHECK(matrix_P() * matrix_P() == Mat4::Identity());
}

TEST_CASE("Type 9 certificates") {
    for (double t : {-2.0, 0.0, 0.5, 3.0}) {
        ConjugacyCheck chk = verify_conjugacy(type9_shear_certificate(t));
        CHECK(chk.ok);
        CHECK(chk.max_residual <= 1e-10);
    }
    auto c = type9_certificate(2, 1, 1, 2);
    REQUIRE(c.has_value());
    CHECK(verify_conjugacy(*c).ok);
    CHECK_FALSE(type9_certificate(1, 2, 3, 4).has_value());
}

TEST_CASE("singular conjugator") {
    ConjugacyCertificate c = identity_certificate(cusp_n_chart());
    c.conjugator = diag4(1, 1, 1, 0);
    CHECK_THROWS_AS(verify_conjugacy(c), Error);
}
