#include "cusp/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "cusp/random.hpp"
#include "cusp/spectral.hpp"

namespace cusp {

ProjPoint act(const Mat4& g, const ProjPoint& p) {
    double d = std::abs(g.determinant());
    double scale = std::pow(std::max(g.norm(), 1e-300), 4);
    if (!(d > 1e-14 * scale)) fail(ErrorKind::Singular, "act: group element is singular");
    Vec4 v = g * p.coords();
    return ProjPoint(v);
}

namespace {

void grid_rec(int dim, int n, double lo, double hi, std::vector<double>& cur, std::vector<std::vector<double>>& out) {
    if (static_cast<int>(cur.size()) == dim) {
        out.push_back(cur);
        return;
    }
    for (int i = 0; i < n; ++i) {
        double x = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
        cur.push_back(x);
        grid_rec(dim, n, lo, hi, cur, out);
        cur.pop_back();
    }
}

}  // namespace

OrbitSample sample_orbit(const GroupChart& chart, const ProjPoint& p, const SamplingConfig& cfg) {
    OrbitSample s{p, {}, {}};
    std::vector<double> cur;
    grid_rec(chart.dim(), cfg.points_per_axis, cfg.lo, cfg.hi, cur, s.coords);
    s.images.reserve(s.coords.size());
    for (const auto& u : s.coords) s.images.push_back(act(chart.element(u), p));
    return s;
}

int orbit_closure_dim(const GroupChart& chart, const ProjPoint& p, const SamplingConfig& cfg) {
    OrbitSample s = sample_orbit(chart, p, cfg);
    return projective_rank(s.images, cfg.rank_tol) - 1;
}

std::vector<BatteryPoint> standard_battery(std::uint64_t seed) {
    std::vector<BatteryPoint> b;
    for (int i = 0; i < 4; ++i) {
        Vec4 v = Vec4::Zero();
        v(i) = 1;
        b.push_back({"e" + std::to_string(i + 1), v});
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Vec4 v = Vec4::Zero();
            v(i) = v(j) = 1;
            b.push_back({"e" + std::to_string(i + 1) + "+e" + std::to_string(j + 1), v});
        }
    for (int skip = 3; skip >= 0; --skip) {
        Vec4 v = Vec4::Ones();
        v(skip) = 0;
        std::string n;
        for (int i = 0; i < 4; ++i)
            if (i != skip) n += (n.empty() ? "e" : "+e") + std::to_string(i + 1);
        b.push_back({n, v});
    }
    b.push_back({"[1:1:1:1]", Vec4::Ones()});
    Rng rng(seed);
    for (int k = 0; k < 3; ++k) {
        Vec4 v;
        for (int i = 0; i < 4; ++i) v(i) = rng.uniform(0.25, 1.75) * (rng.unit() < 0.5 ? -1.0 : 1.0);
        b.push_back({"random" + std::to_string(k + 1), v});
    }
    return b;
}

int fixed_set_dim(std::span<const Mat4> gens, std::uint64_t seed) {
    SpectralSplit split = spectral_split(gens, seed);
    int best = 0;
    for (int d : common_eigenspace_dims(gens, split)) best = std::max(best, d);
    return best - 1;
}

ClosureSignature closure_signature(const GroupChart& chart, const std::optional<Mat4>& battery_map, std::uint64_t seed,
                                   const SamplingConfig& cfg) {
    ClosureSignature sig;
    for (const auto& bp : standard_battery(seed)) {
        Vec4 v = battery_map ? Vec4(*battery_map * bp.point) : bp.point;
        int d = orbit_closure_dim(chart, ProjPoint(v), cfg);
        sig.dims.push_back(d);
        if (d >= 0 && d <= 3) ++sig.histogram[static_cast<std::size_t>(d)];
    }
    sig.fixed_set_dim = fixed_set_dim(chart.generators(), seed);
    return sig;
}

const std::vector<ClosureRow>& closure_table() {
    static const std::vector<ClosureRow> rows = {
        {Family::C, {{0, 1}, {0, 2}, {0, 4}, {0, 8}, {1, 3}, {1, 5}, {1, 6}, {1, 9}, {1, 10}, {1, 12},
                     {2, 7}, {2, 11}, {2, 13}, {2, 14}}, 3},
        {Family::E1, {{0, 1}, {0, 2}, {0, 8}, {1, 3}, {1, 6}, {1, 9}, {1, 10}, {2, 7}, {2, 11}, {2, 14}}, 3},
        {Family::F0, {{0, 1}, {0, 4}, {1, 5}, {1, 3}, {1, 12}, {2, 7}, {2, 13}}, 3},
        {Family::F1, {{0, 1}, {0, 8}, {1, 9}, {1, 3}, {2, 7}, {2, 11}}, 3},
        {Family::F2, {{0, 1}, {0, 8}, {1, 9}, {1, 7}, {2, 15}}, 2},
        {Family::F3, {{0, 8}, {0, 3}, {1, 9}, {2, 7}, {2, 11}}, 3},
        {Family::N1, {{0, 1}, {1, 3}, {2, 7}}, 3},
        {Family::N2, {{0, 1}, {1, 7}, {2, 15}}, 2},
        {Family::N3, {{0, 3}, {1, 7}}, 3},
        {Family::N4, {{0, 1}, {1, 7}}, 3},
        {Family::N4p, {{0, 1}, {1, 7}}, 3},
        {Family::N5, {{0, 3}, {2, 15}}, 2},
        {Family::N6, {{0, 5}, {1, 7}, {2, 15}}, 2},
        {Family::N7, {{0, 7}}, 3},
        {Family::N8, {{0, 1}, {1, 15}}, 1},
    };
    return rows;
}

const ClosureRow& closure_row(Family f) {
    for (const auto& r : closure_table())
        if (r.family == f) return r;
    fail(ErrorKind::BadParams, "no closure row for this family");
}

int tabulated_closure_dim(const ClosureRow& row, const Vec4& p) {
    unsigned support = 0;
    double scale = p.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i)
        if (std::abs(p(i)) > tol::mat * scale) support |= 1u << i;
    int best = row.generic_dim;
    for (const auto& e : row.entries)
        if ((support & ~e.mask) == 0) best = std::min(best, e.dim);
    return best;
}

}  // namespace cusp
