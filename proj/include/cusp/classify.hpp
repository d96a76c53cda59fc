#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cusp/catalog.hpp"
#include "cusp/curvature.hpp"
#include "cusp/orbits.hpp"
#include "cusp/spectral.hpp"

namespace cusp {

struct AbelianCheck {
    int dim = 0;
    bool abelian = false;
    bool traceless = false;
};

AbelianCheck check_abelian_subalgebra(std::span<const Mat4> gens);

/** @brief Jordan data of a generic element. */
struct EigenProfile {
    std::vector<EigenCluster> clusters;
    int draws = 0;

    /// Jordan partitions per eigenvalue, largest first, e.g. "(2)(1)(1)".
    std::string shape() const;
};

EigenProfile eigen_profile(std::span<const Mat4> gens, std::uint64_t seed = default_seed);

/** @brief Conjugation invariants of the nilpotent parts of a basis. */
struct StructureInvariants {
    int kernel_dim = 0;   // dim of the common kernel
    int image_dim = 0;    // dim of the sum of images
    int product_dim = 0;  // dim of span{N_i N_j}
    int phi_rank = 0;     // rank of the annihilating functional (square-zero case), else 0

    auto operator<=>(const StructureInvariants&) const = default;
};

StructureInvariants structure_invariants(std::span<const Mat4> gens, const SpectralSplit& split);

struct Triangularization {
    Mat4 conjugator;     // M with M^-1 g M upper triangular
    AlgebraBasis upper;
};

Triangularization triangularize(const AlgebraBasis& basis, std::uint64_t seed = default_seed);

struct ClassificationReport {
    Family label = Family::C;
    EigenProfile profile;
    StructureInvariants structure;
    ClosureSignature closure;            // of the triangularized basis
    std::optional<double> detII;         // consulted only for the N4 / N4' pair
    Mat4 triangularizer = Mat4::Identity();
};

/** @brief One of the fifteen labels. Throws Unrecognized, ComplexSpectrum, IllConditioned. */
ClassificationReport classify15(const AlgebraBasis& basis, std::uint64_t seed = default_seed);

struct CuspReport {
    bool is_cusp = false;
    std::optional<Family> label;
    std::optional<ProjTriple> rst;     // Cusp:C canonical [r:s:t]
    std::optional<double> s_prime;     // Cusp:E canonical s'
    ConvexityResult convexity;
    std::optional<Family> ambient;     // family of the centralizer when 3-dimensional
    int centralizer_dim = 0;
    Mat4 triangularizer = Mat4::Identity();
    std::string shape;
};

CuspReport classify_cusp(const AlgebraBasis& basis2d, std::uint64_t seed = default_seed);

/// Traceless centralizer of the span of gens.
std::vector<Mat4> centralizer(std::span<const Mat4> gens);

}  // namespace cusp
