#include <doctest.h>

#include <cmath>

#include "cusp/classify.hpp"
#include "cusp/random.hpp"
#include "cusp/verify.hpp"

using namespace cusp;

namespace {

Mat4 random_unipotent(Rng& rng) {
    Mat4 M = Mat4::Identity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) M(i, j) = rng.uniform(-1, 1);
    return M;
}

// Hand-derived invariants (common kernel, image, products) of the nilpotent parts.
struct Expected {
    Family f;
    std::string shape;
    int kernel, image, product;
};

}  // namespace

TEST_CASE("abelian check") {
    AlgebraBasis cb = algebra_basis(Family::C);
    auto c = cb.gens();
    AbelianCheck a = check_abelian_subalgebra(c);
    CHECK(a.dim == 3);
    CHECK(a.abelian);
    CHECK(a.traceless);
    std::vector<Mat4> bad{elementary(1, 2), elementary(2, 3)};
    CHECK_FALSE(check_abelian_subalgebra(bad).abelian);
    std::vector<Mat4> dep{elementary(1, 3), 2.0 * elementary(1, 3)};
    CHECK(check_abelian_subalgebra(dep).dim == 1);
}

TEST_CASE("eigen shapes and structure invariants of the catalog") {
    std::vector<Expected> table{
        {Family::C, "(1)(1)(1)(1)", 4, 0, 0}, {Family::E1, "(2)(1)(1)", 3, 1, 0}, {Family::F0, "(2)(2)", 2, 2, 0},
        {Family::F1, "(3)(1)", 2, 2, 1},       {Family::F2, "(2,1)(1)", 2, 1, 0},  {Family::F3, "(2,1)(1)", 3, 2, 0},
        {Family::N1, "(4)", 1, 3, 2},          {Family::N2, "(3,1)", 1, 2, 1},     {Family::N3, "(3,1)", 2, 3, 1},
        {Family::N4, "(3,1)", 1, 3, 1},        {Family::N4p, "(3,1)", 1, 3, 1},    {Family::N5, "(2,2)", 2, 2, 0},
        {Family::N6, "(2,2)", 2, 2, 0},        {Family::N7, "(2,1,1)", 3, 3, 0},   {Family::N8, "(2,1,1)", 1, 1, 0},
    };
    for (const auto& e : table) {
        AlgebraBasis b = algebra_basis(e.f);
        auto g = b.gens();
        SpectralSplit split = spectral_split(g, default_seed);
        CHECK(EigenProfile{split.clusters, split.draws}.shape() == e.shape);
        StructureInvariants s = structure_invariants(g, split);
        CHECK(s.kernel_dim == e.kernel);
        CHECK(s.image_dim == e.image);
        CHECK(s.product_dim == e.product);
    }
    AlgebraBasis b5 = algebra_basis(Family::N5), b6 = algebra_basis(Family::N6);
    auto n5 = b5.gens(), n6 = b6.gens();
    CHECK(structure_invariants(n5, spectral_split(n5, 1)).phi_rank == 2);
    CHECK(structure_invariants(n6, spectral_split(n6, 1)).phi_rank == 1);
}

TEST_CASE("triangularize fast path and transposed diagonal family") {
    AlgebraBasis up = algebra_basis(Family::N1);
    CHECK(triangularize(up).conjugator == Mat4::Identity());

    std::vector<Mat4> lower;
    for (const Mat4& g : up.gens()) lower.push_back(g.transpose());
    Triangularization t = triangularize(AlgebraBasis(lower));
    // up to signs the flag is e4, e3, e2, e1
    for (int i = 0; i < 4; ++i) CHECK(std::abs(t.conjugator(3 - i, i)) == doctest::Approx(1.0));
    for (const Mat4& g : t.upper.gens()) CHECK(is_upper_triangular(g));
}

TEST_CASE("triangularize unipotent conjugates") {
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
        Mat4 M = random_unipotent(rng) * random_well_conditioned(rng, 10);
        AlgebraBasis b = algebra_basis(Family::N1).conjugated(M);
        Triangularization t = triangularize(b, static_cast<std::uint64_t>(k));
        Mat4 Q = t.conjugator;
        for (const Mat4& g : b.gens()) CHECK(is_upper_triangular(Mat4(Q.inverse() * g * Q), 1e-9 * g.norm()));
        CHECK(classify15(b, static_cast<std::uint64_t>(k)).label == Family::N1);
    }
}

TEST_CASE("complex spectrum is rejected") {
    Mat4 rot = elementary(2, 1) - elementary(1, 2);
    std::vector<Mat4> g{rot, diag4(1, 1, -1, -1), diag4(0, 0, 1, -1)};
    REQUIRE(check_abelian_subalgebra(g).abelian);
    try {
        classify15(AlgebraBasis(g));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ComplexSpectrum);
    }
}

TEST_CASE("round trip of the catalog") {
    for (Family f : catalog_families()) {
        ClassificationReport r = classify15(algebra_basis(f));
        CHECK(r.label == f);
        CHECK(r.detII.has_value() == (f == Family::N4 || f == Family::N4p));
    }
    std::array<double, 4> t9{1, 1, 1, 1};
    CHECK(classify15(haettel_type_constructor(9, t9).basis).label == Family::N6);
}

TEST_CASE("random conjugates keep their label") {
    Rng rng(99);
    int ill = 0;
    for (Family f : catalog_families()) {
        for (int k = 0; k < 10; ++k) {
            Mat4 M = random_well_conditioned(rng, 100);
            try {
                CHECK(classify15(algebra_basis(f).conjugated(M), static_cast<std::uint64_t>(k)).label == f);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::IllConditioned);
                ++ill;
            }
        }
    }
    CHECK(ill <= 2);
}

TEST_CASE("cusp classification") {
    CuspReport c = classify_cusp(plane_subalgebra(Family::C, {}, ProjTriple(3, 2, 1)));
    REQUIRE(c.is_cusp);
    CHECK(c.label == Family::CuspC);
    CHECK(c.rst->approx_equal(ProjTriple(3, 2, 1), 1e-8));

    CuspReport e = classify_cusp(plane_subalgebra(Family::E1, {}, ProjTriple(2, 0.6, -1)));
    REQUIRE(e.is_cusp);
    CHECK(e.label == Family::CuspE);
    CHECK(*e.s_prime == doctest::Approx(0.3).epsilon(1e-8));

    CuspReport f2 = classify_cusp(plane_subalgebra(Family::F2, {}, ProjTriple(0.4, 1, -1)));
    CHECK_FALSE(f2.is_cusp);

    CHECK(classify_cusp(AlgebraBasis(cusp_f_chart(1, 0).generators())).label == Family::CuspF);
    CHECK(classify_cusp(AlgebraBasis(cusp_n_chart().generators())).label == Family::CuspN);
}

TEST_CASE("centralizer of the diagonal plane is the Cartan") {
    AlgebraBasis plane = plane_subalgebra(Family::C, {}, ProjTriple(3, 2, 1));
    auto cent = centralizer(plane.gens());
    CHECK(cent.size() == 3);
    for (const Mat4& g : cent) CHECK(is_upper_triangular(g, 1e-12));
    CuspReport c = classify_cusp(plane_subalgebra(Family::C, {}, ProjTriple(3, 2, 1)));
    CHECK(c.ambient == Family::C);
}
