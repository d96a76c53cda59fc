#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cusp/errors.hpp"

namespace cusp {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;

namespace tol {
inline constexpr double mat = 1e-12;
inline constexpr double rank = 1e-9;
inline constexpr double sign = 1e-9;
}  // namespace tol

inline constexpr std::uint64_t default_seed = 0x5EED;

/// Elementary matrix E_ij, 1-based indices.
Mat4 elementary(int i, int j);
Mat4 diag4(double a, double b, double c, double d);

bool is_finite(const Mat4& X);
bool is_upper_triangular(const Mat4& X, double tol = tol::mat);
bool is_strictly_upper(const Mat4& X, double tol = tol::mat);
bool is_traceless(const Mat4& X, double tol = tol::mat);

Mat4 commutator(const Mat4& X, const Mat4& Y);

/// True when [X,Y] vanishes relative to the size of X and Y.
bool commutes(const Mat4& X, const Mat4& Y, double tol = tol::mat);

/** @brief I + X + X^2/2 + X^3/6 for strictly upper X. Throws NotNilpotent. */
Mat4 exp_nilpotent(const Mat4& X);

/** @brief Inverse of exp_nilpotent. Throws NotUnipotent. */
Mat4 log_unipotent(const Mat4& U);

/// Scaling-and-squaring Taylor exponential.
Mat4 expm(const Mat4& X);

/** @brief expm with the diagonal replaced by the exact exponentials when X is upper. */
Mat4 exp_triangular(const Mat4& X);

/// Truncated power series, used as an oracle.
Mat4 exp_series(const Mat4& X, int terms);

/** @brief Point of RP^3, stored with its largest-magnitude entry equal to +1. */
class ProjPoint {
public:
    explicit ProjPoint(const Vec4& h);
    ProjPoint(double x, double y, double z, double w) : ProjPoint(Vec4(x, y, z, w)) {}

    static ProjPoint basis(int i);  // 1-based

    const Vec4& coords() const { return h_; }
    bool approx_equal(const ProjPoint& other, double tol = tol::mat) const;
    bool finite_chart() const;       // last coordinate nonzero
    Vec3 affine() const;             // (x/w, y/w, z/w)

private:
    Vec4 h_;
};

Vec4 canonicalize(const Vec4& v);

/// Rank of a stacked matrix: singular values >= rel_tol * largest.
int numerical_rank(const Eigen::MatrixXd& A, double rel_tol);

/** @brief Rank of the stacked homogeneous vectors (rows normalized first). */
int projective_rank(std::span<const ProjPoint> points, double rel_tol = tol::rank);

/** @brief 2 or 3 commuting, traceless, independent 4x4 matrices. */
class AlgebraBasis {
public:
    /// Validates the invariants and throws on violation.
    explicit AlgebraBasis(std::vector<Mat4> gens);

    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Mat4>& gens() const { return gens_; }
    const Mat4& operator[](int i) const { return gens_[static_cast<std::size_t>(i)]; }
    Mat4 combine(std::span<const double> coeffs) const;
    AlgebraBasis conjugated(const Mat4& M) const;  // M g M^-1

private:
    std::vector<Mat4> gens_;
};

/// Rank of matrices viewed as 16-vectors.
int span_rank(std::span<const Mat4> mats, double rel_tol = tol::rank);

/// Max distance of each matrix in `a` from span(b), relative to its norm.
double span_residual(std::span<const Mat4> a, std::span<const Mat4> b);

}  // namespace cusp
