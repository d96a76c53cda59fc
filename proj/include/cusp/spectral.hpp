#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cusp/mat4.hpp"

namespace cusp {

struct EigenCluster {
    double value = 0.0;          // real part of the cluster mean
    int multiplicity = 0;
    std::vector<int> jordan;     // block sizes, descending
};

/** @brief Eigenvalue clusters of a generic element and the matching generalized eigenspaces. */
struct SpectralSplit {
    Mat4 generic;                              // the element that was analysed
    std::vector<EigenCluster> clusters;        // ascending by value
    std::vector<Eigen::MatrixXd> eigenspaces;  // orthonormal basis per cluster
    int draws = 0;
};

/// Orthonormal basis of the null space; singular values <= abs_tol count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double abs_tol);

/// Orthonormal basis of the column span.
Eigen::MatrixXd range_space(const Eigen::MatrixXd& A, double abs_tol);

/// Orthonormal basis of the complement of the orthonormal columns of Q.
Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& Q);

/**
 * @brief Split R^4 by the spectrum of a seeded random element of span(gens).
 *
 * Redraws up to 8 times when two clusters are too close to separate.
 * Throws ComplexSpectrum or IllConditioned.
 */
SpectralSplit spectral_split(std::span<const Mat4> gens, std::uint64_t seed);

/// Per-cluster eigenvalue of each generator (trace of the restriction / multiplicity).
std::vector<std::vector<double>> cluster_weights(std::span<const Mat4> gens, const SpectralSplit& split);

/// g minus its semisimple part, for each generator.
std::vector<Mat4> nilpotent_parts(std::span<const Mat4> gens, const SpectralSplit& split);

/** @brief Dimensions of the common eigenspaces (one per cluster). */
std::vector<int> common_eigenspace_dims(std::span<const Mat4> gens, const SpectralSplit& split);

/// Common eigenvectors inside one cluster's generalized eigenspace (orthonormal columns).
Eigen::MatrixXd common_eigenvectors(std::span<const Mat4> gens, const Eigen::MatrixXd& space);

}  // namespace cusp
