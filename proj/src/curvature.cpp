#include "cusp/curvature.hpp"

#include <cmath>
#include <ostream>

#include "cusp/random.hpp"

namespace cusp {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Convex: return "Convex";
        case Verdict::Flat: return "Flat";
        case Verdict::Indefinite: return "Indefinite";
    }
    return "?";
}

OrbitSurface::OrbitSurface(GroupChart chart, const Vec4& base, int dehom_index)
    : chart_(std::move(chart)), base_(base), dehom_(dehom_index) {
    if (chart_.dim() != 2) fail(ErrorKind::BadParams, "OrbitSurface: chart must be 2-dimensional");
    if (dehom_ < 0 || dehom_ > 3) fail(ErrorKind::BadParams, "OrbitSurface: bad patch index");
    if (!base_.allFinite() || std::abs(base_(dehom_)) <= tol::mat * base_.cwiseAbs().maxCoeff())
        fail(ErrorKind::BadParams, "OrbitSurface: base point is outside the affine patch");
}

Vec3 OrbitSurface::dehomogenize(const Vec4& h) const {
    if (std::abs(h(dehom_)) <= tol::mat * h.cwiseAbs().maxCoeff())
        fail(ErrorKind::BadParams, "OrbitSurface: point left the affine patch");
    Vec3 out;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != dehom_) out(k++) = h(i) / h(dehom_);
    return out;
}

Vec3 OrbitSurface::at(double a, double b) const {
    std::array<double, 2> u{a, b};
    return dehomogenize(chart_.element(u) * base_);
}

namespace {

Vec3 drop(const Vec4& v, int d) {
    Vec3 out;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != d) out(k++) = v(i);
    return out;
}

}  // namespace

SurfaceJet orbit_jet(const OrbitSurface& s) {
    const auto& K = s.chart().generators();
    const Vec4& p = s.base();
    const int d = s.dehom_index();
    Vec4 Fa = K[0] * p, Fb = K[1] * p;
    Vec4 Faa = K[0] * K[0] * p, Fbb = K[1] * K[1] * p;
    Vec4 Fab = 0.5 * (K[0] * K[1] + K[1] * K[0]) * p;
    double w = p(d);
    SurfaceJet j;
    j.f = drop(p, d) / w;
    j.fa = (drop(Fa, d) - j.f * Fa(d)) / w;
    j.fb = (drop(Fb, d) - j.f * Fb(d)) / w;
    j.faa = (drop(Faa, d) - 2.0 * j.fa * Fa(d) - j.f * Faa(d)) / w;
    j.fbb = (drop(Fbb, d) - 2.0 * j.fb * Fb(d) - j.f * Fbb(d)) / w;
    j.fab = (drop(Fab, d) - j.fa * Fb(d) - j.fb * Fa(d) - j.f * Fab(d)) / w;
    return j;
}

namespace {

SurfaceJet central(const std::function<Vec3(double, double)>& f, double h) {
    SurfaceJet j;
    Vec3 f0 = f(0, 0);
    Vec3 fp0 = f(h, 0), fm0 = f(-h, 0), f0p = f(0, h), f0m = f(0, -h);
    j.f = f0;
    j.fa = (fp0 - fm0) / (2 * h);
    j.fb = (f0p - f0m) / (2 * h);
    j.faa = (fp0 - 2 * f0 + fm0) / (h * h);
    j.fbb = (f0p - 2 * f0 + f0m) / (h * h);
    j.fab = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    return j;
}

}  // namespace

SurfaceJet fd_jet(const std::function<Vec3(double, double)>& f, double h, double* error_estimate) {
    SurfaceJet a = central(f, h), b = central(f, h / 2);
    auto rich = [](const Vec3& coarse, const Vec3& fine) -> Vec3 { return (4.0 * fine - coarse) / 3.0; };
    SurfaceJet j;
    j.f = b.f;
    j.fa = rich(a.fa, b.fa);
    j.fb = rich(a.fb, b.fb);
    j.faa = rich(a.faa, b.faa);
    j.fab = rich(a.fab, b.fab);
    j.fbb = rich(a.fbb, b.fbb);
    if (error_estimate) {
        double e = 0.0;
        e = std::max(e, (j.faa - b.faa).norm());
        e = std::max(e, (j.fab - b.fab).norm());
        e = std::max(e, (j.fbb - b.fbb).norm());
        e = std::max(e, (j.fa - b.fa).norm());
        e = std::max(e, (j.fb - b.fb).norm());
        *error_estimate = e;
    }
    return j;
}

double second_form_det(const SurfaceJet& j) {
    Vec3 n = j.fa.cross(j.fb);
    double ga = j.fa.squaredNorm(), gb = j.fb.squaredNorm();
    double detg = n.squaredNorm();
    if (!(ga > 0.0) || !(gb > 0.0) || detg <= tol::sign * ga * gb)
        fail(ErrorKind::DegenerateTangent, "orbit is not 2-dimensional at the base point");
    Vec3 u = n / std::sqrt(detg);
    double L = j.faa.dot(u), M = j.fab.dot(u), N = j.fbb.dot(u);
    return (L * N - M * M) / detg;
}

double second_form_det(const OrbitSurface& s) { return second_form_det(orbit_jet(s)); }

SecondFormResult evaluate_second_form(const OrbitSurface& s, std::optional<double> closed, double tol_sign) {
    SecondFormResult r;
    r.det_numeric = second_form_det(s);
    double err = 0.0;
    SurfaceJet fj = fd_jet([&s](double a, double b) { return s.at(a, b); }, 1e-4, &err);
    try {
        r.det_fd = second_form_det(fj);
        SurfaceJet coarse = fd_jet([&s](double a, double b) { return s.at(a, b); }, 2e-4);
        r.fd_error = std::abs(r.det_fd - second_form_det(coarse));
    } catch (const Error&) {
        r.det_fd = 0.0;
        r.fd_error = INFINITY;
    }
    r.det_closed = closed;
    if (r.det_numeric > tol_sign) r.verdict = Verdict::Convex;
    else if (r.det_numeric < -tol_sign) r.verdict = Verdict::Indefinite;
    else r.verdict = Verdict::Flat;
    return r;
}

double closed_form_detII(Family f, const FamilyParams& params, const Vec3& p) {
    const double x0 = p(0), y0 = p(1), z0 = p(2);
    auto need_rs = [&]() {
        if (!params.rs) fail(ErrorKind::BadParams, "closed_form_detII: (r,s) required");
        return *params.rs;
    };
    switch (f) {
        case Family::C: {
            if (!params.rst) fail(ErrorKind::BadParams, "closed_form_detII: [r:s:t] required for C");
            double r = (*params.rst)[0], s = (*params.rst)[1], t = (*params.rst)[2];
            return r * s * t * (r + s + t) * x0 * x0 * y0 * y0 * z0 * z0;
        }
        case Family::E1: {
            auto [r, s] = need_rs();
            return 16 * (r - 2 * s) * (r + 2 * s) * x0 * x0 * std::pow(z0, 4);
        }
        case Family::F0: {
            auto [r, s] = need_rs();
            (void)s;
            return -16 * r * r * std::pow(y0, 4);
        }
        case Family::F1: {
            auto [r, s] = need_rs();
            (void)s;
            return 64 * r * std::pow(z0, 6);
        }
        case Family::N1: return -1;
        case Family::N4: return -1;
        case Family::N4p: return 1;
        case Family::F2:
        case Family::F3:
        case Family::N2:
        case Family::N3:
        case Family::N5:
        case Family::N6:
        case Family::N7:
        case Family::N8: return 0;
        default: break;
    }
    fail(ErrorKind::BadParams, "closed_form_detII: not one of the fifteen families");
}

std::vector<Vec4> curvature_battery(std::uint64_t seed, int count) {
    std::vector<Vec4> pts{Vec4(1, 1, 1, 1)};
    Rng rng(seed);
    while (static_cast<int>(pts.size()) < count)
        pts.emplace_back(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), 1.0);
    return pts;
}

ConvexityResult is_convex_orbit(const AlgebraBasis& basis2d, std::uint64_t seed, double tol_sign) {
    if (basis2d.dim() != 2) fail(ErrorKind::BadParams, "is_convex_orbit: basis must be 2-dimensional");
    for (const Mat4& g : basis2d.gens())
        if (!is_upper_triangular(g, tol::mat * std::max(1.0, g.norm())))
            fail(ErrorKind::BadParams, "is_convex_orbit: basis must be upper triangular");
    GroupChart chart(std::nullopt, {}, basis2d.gens());
    ConvexityResult res;
    bool any_pos = false, any_neg = false;
    for (const Vec4& p : curvature_battery(seed)) {
        double d;
        try {
            d = second_form_det(OrbitSurface(chart, p));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateTangent) throw;
            ++res.skipped;
            continue;
        }
        res.dets.push_back(d);
        if (d > tol_sign && !any_pos) {
            any_pos = true;
            res.witness = p;
        }
        if (d < -tol_sign && !any_neg) {
            any_neg = true;
            res.negative_witness = p;
        }
    }
    if (any_pos) res.verdict = Verdict::Convex;
    else if (any_neg) res.verdict = Verdict::Indefinite;
    else res.verdict = Verdict::Flat;
    return res;
}

double cusp_e_leaf_height(double r, double s, double k) { return 0.25 * (4 + 2 * r + s) * std::log(k); }

Mesh horosphere_sample(Family cusp, const FamilyParams& params, double k, int grid, double extent) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::BadParams, "horosphere_sample: k must be positive");
    if (grid < 2) fail(ErrorKind::BadParams, "horosphere_sample: grid must be at least 2");
    std::optional<GroupChart> chart;
    Vec4 base;
    int dehom = 3;
    Mesh m;
    switch (cusp) {
        case Family::CuspE: {
            auto rs = params.rs.value_or(std::array<double, 2>{1.0, 0.0});
            if (!(std::abs(rs[1]) < std::abs(rs[0]) / 2)) fail(ErrorKind::BadParams, "horosphere_sample: E needs |s| < |r|/2");
            chart = cusp_e_chart(rs[0], rs[1]);
            base = Vec4(k, cusp_e_leaf_height(rs[0], rs[1], k), 1.0, k);
            dehom = 2;
            m.height_axis = 1;
            break;
        }
        case Family::CuspC: {
            if (!params.rst) fail(ErrorKind::BadParams, "horosphere_sample: C needs [r:s:t]");
            const auto& t = *params.rst;
            if (!(t[0] * t[1] * t[2] * (t[0] + t[1] + t[2]) > 0)) fail(ErrorKind::BadParams, "horosphere_sample: C needs rst(r+s+t) > 0");
            chart = cusp_c_chart(t);
            base = Vec4(k, k, k, 1.0);
            break;
        }
        case Family::CuspF: {
            auto rs = params.rs.value_or(std::array<double, 2>{1.0, 0.0});
            if (!(rs[0] > 0)) fail(ErrorKind::BadParams, "horosphere_sample: F needs r > 0");
            chart = cusp_f_chart(rs[0], rs[1]);
            base = Vec4(0.0, 0.0, k, 1.0);
            break;
        }
        case Family::CuspN:
            chart = cusp_n_chart();
            base = Vec4(k, 0.0, 0.0, 1.0);
            m.height_axis = 0;
            break;
        default: fail(ErrorKind::BadParams, "horosphere_sample: not a cusp family");
    }
    OrbitSurface origin_surface(*chart, base, dehom);
    m.origin = origin_surface.at(0, 0);
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double a = extent * (2.0 * i / (grid - 1) - 1.0);
            double b = extent * (2.0 * j / (grid - 1) - 1.0);
            std::array<double, 2> u{a, b};
            Vec4 v = chart->element(u) * base;
            OrbitSurface here(*chart, v, dehom);
            m.vertices.push_back(here.dehomogenize(v));
            m.coords.push_back({a, b});
            m.curvature.push_back(second_form_det(here));
        }
    for (int i = 0; i + 1 < grid; ++i)
        for (int j = 0; j + 1 < grid; ++j) {
            int v00 = i * grid + j;
            m.quads.push_back({v00, v00 + grid, v00 + grid + 1, v00 + 1});
        }
    return m;
}

void write_obj(std::ostream& os, const Mesh& m) {
    os.precision(17);
    for (const Vec3& v : m.vertices) os << "v " << v(0) << ' ' << v(1) << ' ' << v(2) << '\n';
    for (const auto& q : m.quads) os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_csv(std::ostream& os, const Mesh& m) {
    os.precision(17);
    os << "a,b,x,y,z,curvature\n";
    for (std::size_t i = 0; i < m.vertices.size(); ++i)
        os << m.coords[i][0] << ',' << m.coords[i][1] << ',' << m.vertices[i](0) << ',' << m.vertices[i](1) << ','
           << m.vertices[i](2) << ',' << m.curvature[i] << '\n';
}

}  // namespace cusp
