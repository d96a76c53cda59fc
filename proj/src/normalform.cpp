#include "cusp/normalform.hpp"

#include <algorithm>
#include <cmath>

#include "cusp/random.hpp"

namespace cusp {

namespace {

constexpr double boundary_margin = 1e-10;

Mat4 permutation_matrix(const std::array<int, 4>& tau) {
    Mat4 M = Mat4::Zero();
    for (int i = 0; i < 4; ++i) M(tau[static_cast<std::size_t>(i)], i) = 1.0;
    return M;
}

}  // namespace

Mat4 SignedPermutation::matrix() const {
    Mat4 M = Mat4::Zero();
    for (std::size_t i = 0; i < 4; ++i) M(perm[i], static_cast<int>(i)) = sign[i];
    return M;
}

ConjugacyCertificate identity_certificate(const GroupChart& chart) {
    return {"identity", Mat4::Identity(), chart, chart};
}

CNormalForm normalize_C(const ProjTriple& rst) {
    const double r = rst[0], s = rst[1], t = rst[2];
    const double R = r + s + t;
    if (!(r * s * t * R > 0) || std::abs(r) < boundary_margin || std::abs(s) < boundary_margin ||
        std::abs(t) < boundary_margin || std::abs(R) < boundary_margin)
        fail(ErrorKind::NotConvex, "normalize_C: rst(r+s+t) must be positive");
    std::array<double, 4> alpha{r, s, t, -R};
    int negatives = static_cast<int>(std::count_if(alpha.begin(), alpha.end(), [](double a) { return a < 0; }));
    bool negated = false;
    if (negatives == 3) {
        for (double& a : alpha) a = -a;
        negated = true;
    }
    int neg = static_cast<int>(std::find_if(alpha.begin(), alpha.end(), [](double a) { return a < 0; }) - alpha.begin());
    std::array<int, 4> pi{};  // new position j holds old index pi[j]
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != neg) pi[static_cast<std::size_t>(k++)] = i;
    std::stable_sort(pi.begin(), pi.begin() + 3, [&](int a, int b) { return alpha[static_cast<std::size_t>(a)] > alpha[static_cast<std::size_t>(b)]; });
    pi[3] = neg;

    SignedPermutation sp;
    for (int j = 0; j < 4; ++j) sp.perm[static_cast<std::size_t>(pi[static_cast<std::size_t>(j)])] = j;
    std::array<double, 3> top{alpha[static_cast<std::size_t>(pi[0])], alpha[static_cast<std::size_t>(pi[1])],
                              alpha[static_cast<std::size_t>(pi[2])]};
    ProjTriple canonical(top[0], top[1], top[2]);
    CNormalForm out{rst, canonical, {top[0] / top[2], top[1] / top[2], 1.0}, negated, sp,
                    {"signed permutation", sp.matrix(), cusp_c_chart(rst), cusp_c_chart(canonical)}};
    return out;
}

Mat4 matrix_P() {
    return permutation_matrix({3, 1, 2, 0});
}

Mat4 matrix_Q(double lambda) { return diag4(1.0, lambda, 1.0, 1.0); }

Mat4 matrix_R(double r) {
    if (!(r > 0)) fail(ErrorKind::BadParams, "R needs r > 0");
    double q = std::sqrt(r);
    Mat4 M = Mat4::Identity();
    M(0, 0) = 1.0 / q;
    M(0, 1) = 1.0;
    M(0, 2) = 1.0;
    M(1, 2) = q;
    M(2, 2) = q;
    return M;
}

Mat4 matrix_S(double s) {
    Mat4 M = Mat4::Identity();
    M(1, 2) = s;
    return M;
}

ConjugacyCertificate certificate_P(double r, double s) {
    return {"P", matrix_P(), cusp_e_chart(r, s), cusp_e_chart(r, -s)};
}

ConjugacyCertificate certificate_Q(double r, double s) {
    if (r == 0.0) fail(ErrorKind::BadParams, "Q needs r != 0");
    return {"Q", matrix_Q(1.0 / r), cusp_e_chart(r, s), cusp_e_chart(1.0, s / r)};
}

ConjugacyCertificate certificate_R(double r) {
    return {"R", matrix_R(r), cusp_f_chart(r, 0.0), cusp_f_chart(1.0, 0.0)};
}

ConjugacyCertificate certificate_S(double r, double s) {
    return {"S", matrix_S(s), cusp_f_chart(r, s), cusp_f_chart(r, 0.0)};
}

ENormalForm normalize_E(double r, double s) {
    if (!std::isfinite(r) || !std::isfinite(s)) fail(ErrorKind::BadParams, "normalize_E: non-finite parameters");
    if (r == 0.0 || !(std::abs(s / r) < 0.5 - boundary_margin))
        fail(ErrorKind::NotConvex, "normalize_E: requires |s| < |r|/2");
    ENormalForm out;
    out.r = r;
    out.s = s;
    double ratio = s / r;
    out.s_prime = std::abs(ratio);
    out.Q = r == 1.0 ? Mat4::Identity() : matrix_Q(1.0 / r);
    out.flipped = ratio < 0;
    Mat4 M = out.flipped ? Mat4(matrix_P() * out.Q) : out.Q;
    std::string nm = out.flipped ? "P*Q" : "Q";
    out.certificate = {nm, M, cusp_e_chart(r, s), cusp_e_chart(1.0, out.s_prime)};
    return out;
}

FNormalForm normalize_F(double r, double s) {
    if (!std::isfinite(r) || !std::isfinite(s)) fail(ErrorKind::BadParams, "normalize_F: non-finite parameters");
    if (!(r > boundary_margin)) fail(ErrorKind::NotConvex, "normalize_F: requires r > 0");
    FNormalForm out;
    out.r = r;
    out.s = s;
    if (r != 1.0) out.R = matrix_R(r);
    if (s != 0.0) out.S = matrix_S(s);
    out.certificate = {"R*S", out.R * out.S, cusp_f_chart(r, s), cusp_f_chart(1.0, 0.0)};
    return out;
}

ConjugacyCertificate type9_shear_certificate(double t) {
    std::array<double, 4> p{0, 0, 1, t};
    HaettelAlgebra h = haettel_type_constructor(9, p);
    Mat4 shear = Mat4::Identity() + t * elementary(1, 2);
    Mat4 M = permutation_matrix({2, 0, 3, 1}) * shear;
    GroupChart src(std::nullopt, {}, h.basis.gens());
    return {"shear -t*E14", M, src, family_chart(Family::N6)};
}

std::optional<ConjugacyCertificate> type9_certificate(double x, double y, double z, double t) {
    std::array<double, 4> p{x, y, z, t};
    HaettelAlgebra h = haettel_type_constructor(9, p);
    Eigen::Matrix2d Phi;
    Phi << y, z, x, t;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(Phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(1) > 1e-12 * sv(0)) return std::nullopt;
    Eigen::Vector2d u = svd.matrixU().col(0), v = svd.matrixV().col(0);
    Eigen::Matrix2d G, H;
    G << u(0), u(1), -u(1), u(0);
    H << -v(1), v(0), v(0), v(1);
    Mat4 block = Mat4::Zero();
    block.topLeftCorner<2, 2>() = G;
    block.bottomRightCorner<2, 2>() = H;
    Mat4 M = permutation_matrix({2, 0, 3, 1}) * block;
    GroupChart src(std::nullopt, {}, h.basis.gens());
    return ConjugacyCertificate{"block change of basis", M, src, family_chart(Family::N6)};
}

ConjugacyCheck verify_conjugacy(const ConjugacyCertificate& cert, int n_samples, std::uint64_t seed, double tol) {
    Eigen::FullPivLU<Mat4> lu(cert.conjugator);
    if (!lu.isInvertible()) fail(ErrorKind::Singular, "verify_conjugacy: conjugator is singular");
    Mat4 M = cert.conjugator, Minv = lu.inverse();
    const auto& src = cert.source.generators();
    const auto& dst = cert.target.generators();
    const Eigen::Index ds = static_cast<Eigen::Index>(src.size()), dt = static_cast<Eigen::Index>(dst.size());
    Eigen::MatrixXd A(16, dt);
    for (Eigen::Index j = 0; j < dt; ++j)
        A.col(j) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(dst[static_cast<std::size_t>(j)].data());
    auto qr = A.colPivHouseholderQr();
    ConjugacyCheck out;
    out.coordinate_map.resize(dt, ds);
    for (Eigen::Index i = 0; i < ds; ++i) {
        Mat4 X = M * src[static_cast<std::size_t>(i)] * Minv;
        Eigen::Matrix<double, 16, 1> x = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(X.data());
        Eigen::VectorXd c = qr.solve(x);
        out.coordinate_map.col(i) = c;
        out.algebra_residual = std::max(out.algebra_residual, (A * c - x).cwiseAbs().maxCoeff());
    }
    Rng rng(seed);
    for (int k = 0; k < n_samples; ++k) {
        Eigen::VectorXd u(ds);
        for (Eigen::Index i = 0; i < ds; ++i) u(i) = rng.uniform(-1.0, 1.0);
        Eigen::VectorXd w = out.coordinate_map * u;
        std::vector<double> us(u.data(), u.data() + ds), ws(w.data(), w.data() + dt);
        Mat4 lhs = M * cert.source.element(us) * Minv;
        Mat4 rhs = cert.target.element(ws);
        out.max_residual = std::max(out.max_residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    out.ok = out.max_residual <= tol && out.algebra_residual <= tol;
    return out;
}

}  // namespace cusp
