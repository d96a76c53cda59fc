#include "cusp/mat4.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cusp {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotNilpotent: return "NotNilpotent";
        case ErrorKind::NotUnipotent: return "NotUnipotent";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::DegenerateTangent: return "DegenerateTangent";
        case ErrorKind::NotAbelian: return "NotAbelian";
        case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::Unrecognized: return "Unrecognized";
        case ErrorKind::NotConvex: return "NotConvex";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Mat4 elementary(int i, int j) {
    Mat4 E = Mat4::Zero();
    E(i - 1, j - 1) = 1.0;
    return E;
}

Mat4 diag4(double a, double b, double c, double d) {
    return Vec4(a, b, c, d).asDiagonal();
}

bool is_finite(const Mat4& X) { return X.allFinite(); }

bool is_upper_triangular(const Mat4& X, double tol) {
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(X(i, j)) > tol) return false;
    return true;
}

bool is_strictly_upper(const Mat4& X, double tol) {
    if (!is_upper_triangular(X, tol)) return false;
    for (int i = 0; i < 4; ++i)
        if (std::abs(X(i, i)) > tol) return false;
    return true;
}

bool is_traceless(const Mat4& X, double tol) {
    return std::abs(X.trace()) <= tol * std::max(1.0, X.norm());
}

Mat4 commutator(const Mat4& X, const Mat4& Y) { return X * Y - Y * X; }

bool commutes(const Mat4& X, const Mat4& Y, double tol) {
    double scale = std::max(1.0, X.norm() * Y.norm());
    return commutator(X, Y).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat4 exp_nilpotent(const Mat4& X) {
    if (!is_strictly_upper(X)) fail(ErrorKind::NotNilpotent, "exp_nilpotent: input is not strictly upper triangular");
    Mat4 N = X.triangularView<Eigen::StrictlyUpper>();
    Mat4 N2 = N * N;
    Mat4 N3 = N2 * N;
    return Mat4::Identity() + N + N2 / 2.0 + N3 / 6.0;
}

Mat4 log_unipotent(const Mat4& U) {
    Mat4 N = U - Mat4::Identity();
    if (!is_strictly_upper(N)) fail(ErrorKind::NotUnipotent, "log_unipotent: input is not unipotent upper triangular");
    N = N.triangularView<Eigen::StrictlyUpper>();
    Mat4 N2 = N * N;
    Mat4 N3 = N2 * N;
    return N - N2 / 2.0 + N3 / 3.0;
}

Mat4 expm(const Mat4& X) {
    double norm = X.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Mat4 A = X / std::ldexp(1.0, squarings);
    Mat4 sum = Mat4::Identity();
    Mat4 term = Mat4::Identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * A / static_cast<double>(k);
        sum += term;
        if (term.norm() <= 1e-17 * sum.norm()) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

Mat4 exp_triangular(const Mat4& X) {
    Mat4 R = expm(X);
    if (is_upper_triangular(X)) {
        for (int i = 0; i < 4; ++i) {
            R(i, i) = std::exp(X(i, i));
            for (int j = 0; j < i; ++j) R(i, j) = 0.0;
        }
    }
    return R;
}

Mat4 exp_series(const Mat4& X, int terms) {
    Mat4 sum = Mat4::Identity();
    Mat4 term = Mat4::Identity();
    for (int k = 1; k < terms; ++k) {
        term = term * X / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

Vec4 canonicalize(const Vec4& v) {
    if (!v.allFinite()) fail(ErrorKind::BadParams, "ProjPoint: non-finite coordinates");
    int idx = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(v(i)) > std::abs(v(idx))) idx = i;
    if (v(idx) == 0.0) fail(ErrorKind::ZeroVector, "ProjPoint: zero vector");
    return v / v(idx);
}

ProjPoint::ProjPoint(const Vec4& h) : h_(canonicalize(h)) {}

ProjPoint ProjPoint::basis(int i) {
    Vec4 v = Vec4::Zero();
    v(i - 1) = 1.0;
    return ProjPoint(v);
}

bool ProjPoint::approx_equal(const ProjPoint& other, double tol) const {
    return (h_ - other.h_).cwiseAbs().maxCoeff() <= tol;
}

bool ProjPoint::finite_chart() const { return std::abs(h_(3)) > tol::mat; }

Vec3 ProjPoint::affine() const {
    if (!finite_chart()) fail(ErrorKind::BadParams, "ProjPoint: point at infinity has no affine coordinates");
    return h_.head<3>() / h_(3);
}

int numerical_rank(const Eigen::MatrixXd& A, double rel_tol) {
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= rel_tol * sv(0)) ++r;
    return r;
}

int projective_rank(std::span<const ProjPoint> points, double rel_tol) {
    if (points.empty()) fail(ErrorKind::EmptyInput, "projective_rank: no points");
    Eigen::MatrixXd A(static_cast<Eigen::Index>(points.size()), 4);
    for (std::size_t i = 0; i < points.size(); ++i)
        A.row(static_cast<Eigen::Index>(i)) = points[i].coords().normalized().transpose();
    return numerical_rank(A, rel_tol);
}

namespace {

Eigen::MatrixXd stack16(std::span<const Mat4> mats) {
    Eigen::MatrixXd A(16, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k)
        A.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(mats[k].data());
    return A;
}

}  // namespace

int span_rank(std::span<const Mat4> mats, double rel_tol) {
    if (mats.empty()) return 0;
    return numerical_rank(stack16(mats), rel_tol);
}

double span_residual(std::span<const Mat4> a, std::span<const Mat4> b) {
    Eigen::MatrixXd B = stack16(b);
    auto qr = B.colPivHouseholderQr();
    double worst = 0.0;
    for (const Mat4& X : a) {
        Eigen::Matrix<double, 16, 1> x = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(X.data());
        Eigen::VectorXd c = qr.solve(x);
        double res = (B * c - x).norm() / std::max(1e-300, x.norm());
        worst = std::max(worst, res);
    }
    return worst;
}

AlgebraBasis::AlgebraBasis(std::vector<Mat4> gens) : gens_(std::move(gens)) {
    if (gens_.size() != 2 && gens_.size() != 3) {
        std::ostringstream os;
        os << "AlgebraBasis: expected 2 or 3 generators, got " << gens_.size();
        fail(ErrorKind::BadParams, os.str());
    }
    for (const Mat4& g : gens_) {
        if (!is_finite(g)) fail(ErrorKind::BadParams, "AlgebraBasis: non-finite entry");
        if (!is_traceless(g)) fail(ErrorKind::BadParams, "AlgebraBasis: generator is not traceless");
    }
    if (span_rank(gens_) != dim()) fail(ErrorKind::BadParams, "AlgebraBasis: generators are linearly dependent");
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (!commutes(gens_[i], gens_[j])) fail(ErrorKind::NotAbelian, "AlgebraBasis: generators do not commute (not abelian)");
}

Mat4 AlgebraBasis::combine(std::span<const double> coeffs) const {
    if (coeffs.size() != gens_.size()) fail(ErrorKind::BadParams, "AlgebraBasis::combine: coordinate count mismatch");
    Mat4 X = Mat4::Zero();
    for (std::size_t i = 0; i < gens_.size(); ++i) X += coeffs[i] * gens_[i];
    return X;
}

AlgebraBasis AlgebraBasis::conjugated(const Mat4& M) const {
    Eigen::FullPivLU<Mat4> lu(M);
    if (!lu.isInvertible()) fail(ErrorKind::Singular, "AlgebraBasis::conjugated: singular conjugator");
    Mat4 Minv = lu.inverse();
    std::vector<Mat4> out;
    for (const Mat4& g : gens_) out.push_back(M * g * Minv);
    return AlgebraBasis(std::move(out));
}

}  // namespace cusp
