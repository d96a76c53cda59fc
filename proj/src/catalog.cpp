#include "cusp/catalog.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace cusp {

namespace {

struct NameEntry {
    Family f;
    std::string_view name;
};

constexpr NameEntry names[] = {
    {Family::C, "C"},       {Family::E1, "E1"},   {Family::F0, "F0"},       {Family::F1, "F1"},
    {Family::F2, "F2"},     {Family::F3, "F3"},   {Family::N1, "N1"},       {Family::N2, "N2"},
    {Family::N3, "N3"},     {Family::N4, "N4"},   {Family::N4p, "N4'"},     {Family::N5, "N5"},
    {Family::N6, "N6"},     {Family::N7, "N7"},   {Family::N8, "N8"},       {Family::CuspC, "Cusp:C"},
    {Family::CuspE, "Cusp:E"}, {Family::CuspF, "Cusp:F"}, {Family::CuspN, "Cusp:N"},
};

constexpr Family fifteen[] = {
    Family::C,  Family::E1, Family::F0,  Family::F1, Family::F2, Family::F3, Family::N1, Family::N2,
    Family::N3, Family::N4, Family::N4p, Family::N5, Family::N6, Family::N7, Family::N8,
};

constexpr Family four[] = {Family::CuspC, Family::CuspE, Family::CuspF, Family::CuspN};

Mat4 E(int i, int j) { return elementary(i, j); }

const Mat4 D111 = diag4(1, 1, 1, -3);

std::vector<Mat4> fifteen_gens(Family f) {
    switch (f) {
        case Family::C: return {diag4(1, 0, 0, -1), diag4(0, 1, 0, -1), diag4(0, 0, 1, -1)};
        case Family::E1: return {diag4(-1, 1, 1, -1), diag4(1, 0, 0, -1), E(2, 3)};
        case Family::F0: return {E(1, 2), diag4(1, 1, -1, -1), E(3, 4)};
        case Family::F1: return {D111, E(1, 2) + E(2, 3), E(1, 3)};
        case Family::F2: return {D111, E(1, 2), E(1, 3)};
        case Family::F3: return {D111, E(2, 3), E(1, 3)};
        case Family::N1: {
            Mat4 N = E(1, 2) + E(2, 3) + E(3, 4);
            return {N, N * N, N * N * N};
        }
        case Family::N2: return {E(1, 2) + E(2, 3), E(1, 3), E(1, 4)};
        case Family::N3: return {E(2, 3) + E(3, 4), E(2, 4), E(1, 4)};
        case Family::N4: return {E(1, 2) + E(3, 4), E(1, 3) + E(2, 4), E(1, 4)};
        case Family::N4p: return {E(1, 2) + E(2, 4), E(1, 3) + E(3, 4), E(1, 4)};
        case Family::N5: return {E(2, 3), E(1, 3) + E(2, 4), E(1, 4)};
        case Family::N6: return {E(1, 2), E(3, 4), E(1, 4)};
        case Family::N7: return {E(3, 4), E(2, 4), E(1, 4)};
        case Family::N8: return {E(1, 2), E(1, 3), E(1, 4)};
        default: break;
    }
    fail(ErrorKind::BadParams, "not a 3-dimensional family");
}

GroupChart::ClosedForm fifteen_closed(Family f) {
    using std::exp;
    switch (f) {
        case Family::C:
            return [](std::span<const double> u) {
                return diag4(exp(u[0]), exp(u[1]), exp(u[2]), exp(-u[0] - u[1] - u[2]));
            };
        case Family::E1:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                Mat4 g = diag4(exp(b - a), exp(a), exp(a), exp(-a - b));
                g(1, 2) = c * exp(a);
                return g;
            };
        case Family::F0:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                Mat4 g = diag4(exp(b), exp(b), exp(-b), exp(-b));
                g(0, 1) = a * exp(b);
                g(2, 3) = c * exp(-b);
                return g;
            };
        case Family::F1:
        case Family::F2:
        case Family::F3:
            return [f](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                Mat4 U = Mat4::Identity();
                if (f == Family::F1) {
                    U(0, 1) = b;
                    U(1, 2) = b;
                    U(0, 2) = c + b * b / 2;
                } else if (f == Family::F2) {
                    U(0, 1) = b;
                    U(0, 2) = c;
                } else {
                    U(1, 2) = b;
                    U(0, 2) = c;
                }
                Mat4 g = exp(a) * U;
                g(3, 3) = exp(-3 * a);
                return g;
            };
        case Family::N1:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                Mat4 N = E(1, 2) + E(2, 3) + E(3, 4);
                return Mat4(Mat4::Identity() + a * N + (b + a * a / 2) * N * N + (c + a * b + a * a * a / 6) * N * N * N);
            };
        case Family::N2:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                return Mat4(Mat4::Identity() + a * (E(1, 2) + E(2, 3)) + (b + a * a / 2) * E(1, 3) + c * E(1, 4));
            };
        case Family::N3:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                return Mat4(Mat4::Identity() + a * (E(2, 3) + E(3, 4)) + (b + a * a / 2) * E(2, 4) + c * E(1, 4));
            };
        case Family::N4:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                return Mat4(Mat4::Identity() + a * (E(1, 2) + E(3, 4)) + b * (E(1, 3) + E(2, 4)) + (c + a * b) * E(1, 4));
            };
        case Family::N4p:
            return [](std::span<const double> u) {
                double a = u[0], b = u[1], c = u[2];
                return Mat4(Mat4::Identity() + a * (E(1, 2) + E(2, 4)) + b * (E(1, 3) + E(3, 4)) +
                            (c + (a * a + b * b) / 2) * E(1, 4));
            };
        case Family::N5:
        case Family::N6:
        case Family::N7:
        case Family::N8: {
            auto gens = fifteen_gens(f);
            return [gens](std::span<const double> u) {
                return Mat4(Mat4::Identity() + u[0] * gens[0] + u[1] * gens[1] + u[2] * gens[2]);
            };
        }
        default: break;
    }
    return {};
}

std::array<double, 2> rs_or(const FamilyParams& p, std::array<double, 2> fallback) {
    return p.rs ? *p.rs : fallback;
}

GroupChart relabel(const GroupChart& g, Family f, FamilyParams params) {
    GroupChart::ClosedForm cf;
    if (g.has_closed_form()) cf = [g](std::span<const double> u) { return g.element(u); };
    return GroupChart(f, std::move(params), g.generators(), cf);
}

}  // namespace

std::string_view name(Family f) {
    for (const auto& e : names)
        if (e.f == f) return e.name;
    return "?";
}

std::optional<Family> parse_family(std::string_view s) {
    for (const auto& e : names)
        if (e.name == s) return e.f;
    if (s == "N4p" || s == "N4prime") return Family::N4p;
    if (s == "CuspC") return Family::CuspC;
    if (s == "CuspE") return Family::CuspE;
    if (s == "CuspF") return Family::CuspF;
    if (s == "CuspN") return Family::CuspN;
    return std::nullopt;
}

bool is_cusp(Family f) {
    return f == Family::CuspC || f == Family::CuspE || f == Family::CuspF || f == Family::CuspN;
}

std::span<const Family> catalog_families() { return fifteen; }
std::span<const Family> cusp_families() { return four; }

ProjTriple::ProjTriple(double r, double s, double t) {
    if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(t)) fail(ErrorKind::BadParams, "triple has non-finite entries");
    double n = std::sqrt(r * r + s * s + t * t);
    if (n == 0.0) fail(ErrorKind::ZeroVector, "triple [0:0:0] is not a projective point");
    if (std::abs(n - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) n = 1.0;
    v_ = {r / n, s / n, t / n};
    for (double x : v_) {
        if (x == 0.0) continue;
        if (x < 0.0)
            for (double& y : v_) y = -y;
        break;
    }
    for (double& y : v_)
        if (y == 0.0) y = 0.0;  // drop negative zero
}

bool ProjTriple::approx_equal(const ProjTriple& o, double tol) const {
    for (int i = 0; i < 3; ++i)
        if (std::abs(v_[static_cast<std::size_t>(i)] - o.v_[static_cast<std::size_t>(i)]) > tol) return false;
    return true;
}

GroupChart::GroupChart(std::optional<Family> label, FamilyParams params, std::vector<Mat4> gens, ClosedForm closed)
    : label_(label), params_(std::move(params)), gens_(std::move(gens)), closed_(std::move(closed)) {}

Mat4 GroupChart::log_element(std::span<const double> coords) const {
    if (coords.size() != gens_.size()) fail(ErrorKind::BadParams, "chart: coordinate count mismatch");
    Mat4 X = Mat4::Zero();
    for (std::size_t i = 0; i < gens_.size(); ++i) X += coords[i] * gens_[i];
    return X;
}

Mat4 GroupChart::element_via_exp(std::span<const double> coords) const {
    Mat4 X = log_element(coords);
    if (is_strictly_upper(X)) return exp_nilpotent(X);
    return exp_triangular(X);
}

Mat4 GroupChart::element(std::span<const double> coords) const {
    if (coords.size() != gens_.size()) fail(ErrorKind::BadParams, "chart: coordinate count mismatch");
    for (double c : coords)
        if (!std::isfinite(c)) fail(ErrorKind::BadParams, "chart: non-finite coordinate");
    if (closed_) return closed_(coords);
    return element_via_exp(coords);
}

GroupChart GroupChart::conjugated(const Mat4& M) const {
    Eigen::FullPivLU<Mat4> lu(M);
    if (!lu.isInvertible()) fail(ErrorKind::Singular, "chart: singular conjugator");
    Mat4 Minv = lu.inverse();
    std::vector<Mat4> g;
    for (const Mat4& X : gens_) g.push_back(M * X * Minv);
    ClosedForm cf;
    if (closed_) {
        auto inner = closed_;
        cf = [inner, M, Minv](std::span<const double> u) { return Mat4(M * inner(u) * Minv); };
    }
    return GroupChart(label_, params_, std::move(g), cf);
}

Mat4 group_element(const GroupChart& chart, std::span<const double> coords) { return chart.element(coords); }

AlgebraBasis algebra_basis(Family f, const FamilyParams& params) {
    return AlgebraBasis(family_chart(f, params).generators());
}

GroupChart family_chart(Family f, const FamilyParams& params) {
    switch (f) {
        case Family::CuspC:
            if (!params.rst) fail(ErrorKind::BadParams, "Cusp:C needs a plane [r:s:t]");
            return cusp_c_chart(*params.rst);
        case Family::CuspE: {
            auto rs = rs_or(params, {1.0, 0.0});
            return cusp_e_chart(rs[0], rs[1]);
        }
        case Family::CuspF: {
            auto rs = rs_or(params, {1.0, 0.0});
            return cusp_f_chart(rs[0], rs[1]);
        }
        case Family::CuspN: return cusp_n_chart();
        default: break;
    }
    return GroupChart(f, params, fifteen_gens(f), fifteen_closed(f));
}

Eigen::RowVector3d plane_functional(Family f, const ProjTriple& plane) {
    double r = plane[0], s = plane[1], t = plane[2];
    if (f == Family::C || f == Family::CuspC) {
        double R = r + s + t;
        return Eigen::RowVector3d(r + R, s + R, t + R);
    }
    return Eigen::RowVector3d(r, s, t);
}

AlgebraBasis plane_subalgebra(Family f, const FamilyParams& params, const ProjTriple& plane) {
    if (is_cusp(f)) fail(ErrorKind::BadParams, "plane_subalgebra: family must be one of the fifteen");
    auto gens = family_chart(f, params).generators();
    Eigen::RowVector3d ell = plane_functional(f, plane);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(ell), Eigen::ComputeFullV);
    Eigen::Matrix3d V = svd.matrixV();
    std::vector<Mat4> out;
    for (int k = 1; k < 3; ++k) {
        Mat4 X = Mat4::Zero();
        for (int j = 0; j < 3; ++j) X += V(j, k) * gens[static_cast<std::size_t>(j)];
        out.push_back(X);
    }
    return AlgebraBasis(std::move(out));
}

GroupChart plane_chart(Family f, const ProjTriple& plane) {
    AlgebraBasis b = plane_subalgebra(f, {}, plane);
    FamilyParams p;
    p.rst = plane;
    return GroupChart(f, p, b.gens());
}

GroupChart rs_plane_chart(Family f, double r, double s) {
    if (!std::isfinite(r) || !std::isfinite(s)) fail(ErrorKind::BadParams, "rs_plane_chart: non-finite parameters");
    if (f == Family::C) return plane_chart(f, ProjTriple(r, s, -1.0));
    GroupChart full = family_chart(f);
    const auto& g = full.generators();
    FamilyParams p;
    p.rs = std::array<double, 2>{r, s};
    GroupChart::ClosedForm cf;
    if (full.has_closed_form())
        cf = [full, r, s](std::span<const double> u) {
            std::array<double, 3> w{u[0], u[1], r * u[0] + s * u[1]};
            return full.element(w);
        };
    return GroupChart(f, p, {g[0] + r * g[2], g[1] + s * g[2]}, cf);
}

GroupChart cusp_c_chart(const ProjTriple& rst) {
    FamilyParams p;
    p.rst = rst;
    return relabel(plane_chart(Family::C, rst), Family::CuspC, p);
}

GroupChart cusp_e_chart(double r, double s) {
    FamilyParams p;
    p.rs = std::array<double, 2>{r, s};
    return relabel(rs_plane_chart(Family::E1, r, s), Family::CuspE, p);
}

GroupChart cusp_f_chart(double r, double s) {
    FamilyParams p;
    p.rs = std::array<double, 2>{r, s};
    return relabel(rs_plane_chart(Family::F1, r, s), Family::CuspF, p);
}

GroupChart cusp_n_chart() { return relabel(rs_plane_chart(Family::N4p, 0.0, 0.0), Family::CuspN, {}); }

// ---------------------------------------------------------------------------

namespace {

std::string fmt_params(std::span<const double> p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

double param(std::span<const double> p, std::size_t i, int type_id) {
    if (i >= p.size()) {
        std::ostringstream os;
        os << "Type " << type_id << ": missing parameter " << i;
        fail(ErrorKind::BadParams, os.str());
    }
    return p[i];
}

bool nz(double x) { return std::abs(x) > tol::mat; }

}  // namespace

HaettelAlgebra haettel_type_constructor(int type_id, std::span<const double> p) {
    std::vector<Mat4> g;
    Family asserted = Family::C;
    std::string regime;
    switch (type_id) {
        case 1:
            g = fifteen_gens(Family::C);
            asserted = Family::C;
            regime = "Cartan";
            break;
        case 2: {
            int v = static_cast<int>(param(p, 0, 2));
            switch (v) {
                case 0: g = {diag4(1, 1, 0, -2), E(1, 2), diag4(0, 0, 1, -1)}; regime = "alpha"; break;
                case 1: g = {diag4(1, 0, 0, -1), diag4(0, 1, 1, -2), E(2, 3)}; regime = "beta"; break;
                case 2: g = {diag4(1, -1, 0, 0), diag4(0, -2, 1, 1), E(3, 4)}; regime = "gamma"; break;
                case 3: g = {diag4(1, 0, 1, -2), diag4(0, 1, 0, -1), E(1, 3)}; regime = "alpha+beta"; break;
                case 4: g = {diag4(1, 0, -1, 0), diag4(0, 1, -2, 1), E(2, 4)}; regime = "beta+gamma"; break;
                case 5: g = {diag4(1, 0, -2, 1), diag4(0, 1, -1, 0), E(1, 4)}; regime = "alpha+beta+gamma"; break;
                default: fail(ErrorKind::BadParams, "Type 2: variant must be 0..5");
            }
            asserted = Family::E1;
            break;
        }
        case 3:
        case 5: {
            double x = param(p, 0, type_id), y = param(p, 1, type_id);
            if (!nz(x) && !nz(y)) fail(ErrorKind::BadParams, "Types 3/5: [x:y] must be nonzero");
            if (type_id == 3)
                g = {D111, x * E(1, 2) + y * E(2, 3), E(1, 3)};
            else
                g = {diag4(-3, 1, 1, 1), x * E(2, 3) + y * E(3, 4), E(2, 4)};
            if (!nz(x)) {
                asserted = Family::F3;
                regime = "[0:1]";
            } else if (!nz(y)) {
                asserted = Family::F2;
                regime = "[1:0]";
            } else {
                asserted = Family::F1;
                regime = "[x:y], xy != 0";
            }
            break;
        }
        case 4:
            g = {diag4(1, 1, -1, -1), E(1, 2), E(3, 4)};
            asserted = Family::F0;
            regime = "alpha,gamma";
            break;
        case 6: {
            double x = param(p, 0, 6), y = param(p, 1, 6), z = param(p, 2, 6);
            if (!nz(x) || !nz(z)) fail(ErrorKind::BadParams, "Type 6: x and z must be nonzero");
            g = {x * E(1, 2) + y * E(2, 3) + z * E(3, 4), x * E(1, 3) + z * E(2, 4), E(1, 4)};
            asserted = nz(y) ? Family::N1 : Family::N4;
            regime = nz(y) ? "y != 0" : "y = 0";
            break;
        }
        case 7: {
            double y = param(p, 0, 7), t = param(p, 1, 7);
            g = {E(1, 2) + y * E(2, 3) + t * E(2, 4), E(1, 3), E(1, 4)};
            bool zero = !nz(y) && !nz(t);
            asserted = zero ? Family::N8 : Family::N2;
            regime = zero ? "(0,0)" : "(y,t) != (0,0)";
            break;
        }
        case 8: {
            double y = param(p, 0, 8), t = param(p, 1, 8);
            g = {t * E(1, 3) + y * E(2, 3) + E(3, 4), E(2, 4), E(1, 4)};
            bool zero = !nz(y) && !nz(t);
            asserted = zero ? Family::N7 : Family::N3;
            regime = zero ? "(0,0)" : "(y,t) != (0,0)";
            break;
        }
        case 9: {
            double x = param(p, 0, 9), y = param(p, 1, 9), z = param(p, 2, 9), t = param(p, 3, 9);
            if (!nz(x) && !nz(y) && !nz(z) && !nz(t)) fail(ErrorKind::BadParams, "Type 9: [x:y:z:t] must be nonzero");
            // coefficient vector (a, b, c, d) on E23, E13, E14, E24
            Eigen::RowVector4d ell(x, y, z, t);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(ell), Eigen::ComputeFullV);
            Eigen::Matrix4d V = svd.matrixV();
            const Mat4 slots[4] = {E(2, 3), E(1, 3), E(1, 4), E(2, 4)};
            for (int k = 1; k < 4; ++k) {
                Mat4 X = Mat4::Zero();
                for (int j = 0; j < 4; ++j) X += V(j, k) * slots[j];
                g.push_back(X);
            }
            // shapes [0:0:1:t], [1:y:0:0], [1:0:z:0], [0:1:0:t]
            bool s1 = !nz(x) && !nz(y) && nz(z);
            bool s2 = nz(x) && !nz(z) && !nz(t);
            bool s3 = nz(x) && !nz(y) && !nz(t);
            bool s4 = !nz(x) && nz(y) && !nz(z);
            if (s1) regime = "[0:0:1:t]";
            else if (s2) regime = "[1:y:0:0]";
            else if (s3) regime = "[1:0:z:0]";
            else if (s4) regime = "[0:1:0:t]";
            else regime = "other";
            asserted = (s1 || s2 || s3 || s4) ? Family::N6 : Family::N5;
            break;
        }
        case 10: {
            double x = param(p, 0, 10), y = param(p, 1, 10);
            g = {E(1, 2) + x * E(2, 4), y * E(1, 3) + E(3, 4), E(1, 4)};
            if (!nz(x) && !nz(y)) {
                asserted = Family::N6;
                regime = "(0,0)";
            } else if (!nz(y)) {
                asserted = Family::N2;
                regime = "(x,0)";
            } else if (!nz(x)) {
                asserted = Family::N3;
                regime = "(0,y)";
            } else if ((x > 0) == (y > 0)) {
                asserted = Family::N4;
                regime = "sign(x) = sign(y)";
            } else {
                asserted = Family::N4p;
                regime = "sign(x) = -sign(y)";
            }
            break;
        }
        default: fail(ErrorKind::BadParams, "Haettel type must be 1..10");
    }
    HaettelAlgebra h{type_id, std::vector<double>(p.begin(), p.end()), "Type " + std::to_string(type_id) + " " + regime + " " + fmt_params(p),
                     AlgebraBasis(std::move(g)), asserted};
    return h;
}

std::vector<HaettelRegime> haettel_regimes() {
    std::vector<HaettelRegime> out;
    out.push_back({1, {}});
    for (int v = 0; v < 6; ++v) out.push_back({2, {static_cast<double>(v)}});
    for (int t : {3, 5}) {
        out.push_back({t, {0, 1}});
        out.push_back({t, {1, 0}});
        out.push_back({t, {1, 2}});
        out.push_back({t, {-1.5, 0.5}});
    }
    out.push_back({4, {}});
    out.push_back({6, {1, 1, 1}});
    out.push_back({6, {2, -0.5, 1}});
    out.push_back({6, {1, 0, 1}});
    out.push_back({6, {1, 0, -2}});
    out.push_back({7, {1, 0}});
    out.push_back({7, {0, 1}});
    out.push_back({7, {0.5, -2}});
    out.push_back({7, {0, 0}});
    out.push_back({8, {1, 0}});
    out.push_back({8, {0, 1}});
    out.push_back({8, {0.5, -2}});
    out.push_back({8, {0, 0}});
    out.push_back({9, {0, 0, 1, 2}});
    out.push_back({9, {0, 0, 1, 0}});
    out.push_back({9, {1, 2, 0, 0}});
    out.push_back({9, {1, 0, 2, 0}});
    out.push_back({9, {0, 1, 0, 2}});
    out.push_back({9, {1, 1, 1, 1}});
    out.push_back({9, {1, 2, 3, 4}});
    out.push_back({10, {1, 1}});
    out.push_back({10, {-2, -0.5}});
    out.push_back({10, {1, -1}});
    out.push_back({10, {-0.5, 3}});
    out.push_back({10, {0, 0}});
    out.push_back({10, {1, 0}});
    out.push_back({10, {0, 1}});
    return out;
}

}  // namespace cusp
