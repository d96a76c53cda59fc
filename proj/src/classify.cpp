#include "cusp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "cusp/normalform.hpp"
#include "cusp/random.hpp"

namespace cusp {

namespace {

constexpr double rel_tol = 1e-8;

std::vector<Mat4> normalized(std::span<const Mat4> gens) {
    std::vector<Mat4> out;
    for (const Mat4& g : gens) {
        double n = g.norm();
        out.push_back(n > 0 ? Mat4(g / n) : g);
    }
    return out;
}

}  // namespace

AbelianCheck check_abelian_subalgebra(std::span<const Mat4> gens) {
    AbelianCheck c;
    if (gens.empty()) return c;
    c.dim = span_rank(gens);
    c.abelian = true;
    c.traceless = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!is_traceless(gens[i])) c.traceless = false;
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!commutes(gens[i], gens[j])) c.abelian = false;
    }
    return c;
}

std::string EigenProfile::shape() const {
    std::vector<std::vector<int>> parts;
    for (const auto& c : clusters) parts.push_back(c.jordan);
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int x : a) sa += x;
        for (int x : b) sb += x;
        if (sa != sb) return sa > sb;
        return a > b;
    });
    std::ostringstream os;
    for (const auto& p : parts) {
        os << '(';
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
        os << ')';
    }
    return os.str();
}

EigenProfile eigen_profile(std::span<const Mat4> gens, std::uint64_t seed) {
    auto g = normalized(gens);
    SpectralSplit split = spectral_split(g, seed);
    return {split.clusters, split.draws};
}

StructureInvariants structure_invariants(std::span<const Mat4> gens, const SpectralSplit& split) {
    auto g = normalized(gens);
    auto N = nilpotent_parts(g, split);
    StructureInvariants s;
    const Eigen::Index k = static_cast<Eigen::Index>(N.size());
    Eigen::MatrixXd stacked(4 * k, 4), side(4, 4 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        stacked.middleRows(4 * i, 4) = N[static_cast<std::size_t>(i)];
        side.middleCols(4 * i, 4) = N[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXd K = null_space(stacked, rel_tol);
    Eigen::MatrixXd I = range_space(side, rel_tol);
    s.kernel_dim = static_cast<int>(K.cols());
    s.image_dim = static_cast<int>(I.cols());
    std::vector<Mat4> prods;
    for (std::size_t i = 0; i < N.size(); ++i)
        for (std::size_t j = i; j < N.size(); ++j) prods.push_back(N[i] * N[j]);
    Eigen::MatrixXd P(16, static_cast<Eigen::Index>(prods.size()));
    for (std::size_t i = 0; i < prods.size(); ++i)
        P.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(prods[i].data());
    s.product_dim = static_cast<int>(range_space(P, rel_tol).cols());

    if (s.product_dim == 0 && s.kernel_dim == 2 && s.image_dim == 2 && k == 3 && span_rank(N) == 3) {
        Eigen::MatrixXd C = orth_complement(K);
        Eigen::MatrixXd rows(3, 4);
        for (Eigen::Index i = 0; i < 3; ++i) {
            Eigen::Matrix2d B = I.transpose() * N[static_cast<std::size_t>(i)] * C;
            rows.row(i) << B(0, 0), B(0, 1), B(1, 0), B(1, 1);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
        Eigen::Vector4d phi = svd.matrixV().col(3);
        Eigen::Matrix2d Phi;
        Phi << phi(0), phi(1), phi(2), phi(3);
        Eigen::JacobiSVD<Eigen::Matrix2d> ps(Phi);
        s.phi_rank = ps.singularValues()(1) > 1e-6 * ps.singularValues()(0) ? 2 : 1;
    }
    return s;
}

namespace {

Eigen::VectorXd common_eigenvector(const std::vector<Eigen::MatrixXd>& g, Rng& rng, double ref) {
    const Eigen::Index n = g[0].rows();
    double scale = 0.0;
    for (const auto& x : g) scale = std::max(scale, x.norm());
    if (scale <= 1e-9 * ref) return Eigen::VectorXd::Unit(n, 0);
    for (int draw = 0; draw < 8; ++draw) {
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
        for (const auto& x : g) X += rng.uniform(0.5, 1.5) * (rng.unit() < 0.5 ? -1.0 : 1.0) * x / scale;
        Eigen::EigenSolver<Eigen::MatrixXd> es(X, false);
        if (es.info() != Eigen::Success) continue;
        Eigen::VectorXcd ev = es.eigenvalues();
        double fro = X.norm();
        double link = std::max(1e-2 * ev.cwiseAbs().maxCoeff(), 1e-3 * fro);
        if (link == 0.0) link = 1e-300;
        Eigen::Index lo = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (ev(i).real() < ev(lo).real()) lo = i;
        std::vector<bool> in(static_cast<std::size_t>(n), false);
        in[static_cast<std::size_t>(lo)] = true;
        for (int pass = 0; pass < n; ++pass)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    if (in[static_cast<std::size_t>(j)] && std::abs(ev(i) - ev(j)) <= link) in[static_cast<std::size_t>(i)] = true;
        bool ambiguous = false;
        std::complex<double> sum = 0;
        int m = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (in[static_cast<std::size_t>(i)]) {
                sum += ev(i);
                ++m;
                continue;
            }
            for (Eigen::Index j = 0; j < n; ++j)
                if (in[static_cast<std::size_t>(j)] && std::abs(ev(i) - ev(j)) < 5 * link) ambiguous = true;
        }
        if (ambiguous) continue;
        if (std::abs((sum / static_cast<double>(m)).imag()) > link)
            fail(ErrorKind::ComplexSpectrum, "triangularize: spectrum of a generic element is not real");
        double lambda = (sum / static_cast<double>(m)).real();
        Eigen::MatrixXd A = X - lambda * Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
        for (int p = 0; p < m; ++p) P = P * A;
        Eigen::MatrixXd B = null_space(P, 1e-9 * std::pow(std::max(fro, 1e-300), m));
        if (B.cols() != m) continue;
        Eigen::MatrixXd stack(m * static_cast<Eigen::Index>(g.size()), m);
        for (std::size_t i = 0; i < g.size(); ++i) {
            Eigen::MatrixXd R = B.transpose() * (g[i] / scale) * B;
            double mu = R.trace() / m;
            stack.middleRows(static_cast<Eigen::Index>(i) * m, m) = R - mu * Eigen::MatrixXd::Identity(m, m);
        }
        Eigen::MatrixXd Y = null_space(stack, 1e-8);
        if (Y.cols() == 0) continue;
        return (B * Y.col(0)).normalized();
    }
    fail(ErrorKind::IllConditioned, "triangularize: no stable common eigenvector");
}

Eigen::MatrixXd common_flag(const std::vector<Eigen::MatrixXd>& g, Rng& rng, double ref) {
    const Eigen::Index n = g[0].rows();
    if (n == 1) return Eigen::MatrixXd::Identity(1, 1);
    Eigen::VectorXd v = common_eigenvector(g, rng, ref);
    Eigen::MatrixXd W = orth_complement(v);
    std::vector<Eigen::MatrixXd> q;
    for (const auto& x : g) q.push_back(W.transpose() * x * W);
    Eigen::MatrixXd Qs = common_flag(q, rng, ref);
    Eigen::MatrixXd Q(n, n);
    Q.col(0) = v;
    Q.rightCols(n - 1) = W * Qs;
    return Q;
}

bool all_upper(std::span<const Mat4> gens, double rel) {
    for (const Mat4& g : gens)
        if (!is_upper_triangular(g, rel * std::max(1.0, g.norm()))) return false;
    return true;
}

}  // namespace

Triangularization triangularize(const AlgebraBasis& basis, std::uint64_t seed) {
    if (all_upper(basis.gens(), tol::mat)) return {Mat4::Identity(), basis};
    Rng rng(seed ^ 0xA5A5A5A5ULL);
    std::vector<Eigen::MatrixXd> g;
    for (const Mat4& x : basis.gens()) g.emplace_back(x);
    double ref = 0.0;
    for (const auto& x : g) ref = std::max(ref, x.norm());
    Mat4 Q = common_flag(g, rng, ref);
    std::vector<Mat4> up;
    for (const Mat4& x : basis.gens()) {
        Mat4 y = Q.transpose() * x * Q;
        double scale = std::max(1.0, x.norm());
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < i; ++j) {
                if (std::abs(y(i, j)) > 1e-8 * scale) fail(ErrorKind::IllConditioned, "triangularize: residual below the diagonal");
                y(i, j) = 0.0;
            }
        up.push_back(y);
    }
    return {Q, AlgebraBasis(std::move(up))};
}

namespace {

struct RefKey {
    std::string shape;
    StructureInvariants structure;
    bool operator<(const RefKey& o) const { return std::tie(shape, structure) < std::tie(o.shape, o.structure); }
};

const std::map<RefKey, std::vector<Family>>& reference_table() {
    static const std::map<RefKey, std::vector<Family>> table = [] {
        std::map<RefKey, std::vector<Family>> t;
        for (Family f : catalog_families()) {
            auto gens = family_chart(f).generators();
            auto g = normalized(gens);
            SpectralSplit split = spectral_split(g, default_seed);
            RefKey key{EigenProfile{split.clusters, split.draws}.shape(), structure_invariants(g, split)};
            t[key].push_back(f);
        }
        return t;
    }();
    return table;
}

double plane_curvature_sign(const AlgebraBasis& upper, std::uint64_t seed) {
    Rng rng(seed ^ 0x51ED5EEDULL);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::array<double, 3> u{}, v{};
        for (auto& x : u) x = rng.uniform(-1, 1);
        for (auto& x : v) x = rng.uniform(-1, 1);
        AlgebraBasis plane({upper.combine(u), upper.combine(v)});
        ConvexityResult c = is_convex_orbit(plane, seed);
        if (c.verdict == Verdict::Convex) return c.dets.empty() ? 1.0 : *std::max_element(c.dets.begin(), c.dets.end());
        if (c.verdict == Verdict::Indefinite) return *std::min_element(c.dets.begin(), c.dets.end());
    }
    return 0.0;
}

}  // namespace

ClassificationReport classify15(const AlgebraBasis& basis, std::uint64_t seed) {
    if (basis.dim() != 3) fail(ErrorKind::BadParams, "classify15: basis must be 3-dimensional");
    auto g = normalized(basis.gens());

    // the key has to come out the same from two independent generic elements
    std::vector<std::pair<RefKey, SpectralSplit>> seen;
    std::optional<std::size_t> agreed;
    for (std::uint64_t a = 0; a < 5 && !agreed; ++a) {
        SpectralSplit split;
        try {
            split = spectral_split(g, a == 0 ? seed : seed ^ (0x9E3779B97F4A7C15ULL * a));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::IllConditioned) throw;
            continue;
        }
        RefKey key{EigenProfile{split.clusters, split.draws}.shape(), structure_invariants(g, split)};
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!(seen[i].first < key) && !(key < seen[i].first)) agreed = i;
        seen.emplace_back(std::move(key), std::move(split));
    }
    if (!agreed) fail(ErrorKind::IllConditioned, "classify15: spectral data not reproducible across generic elements");

    const auto& [key, split] = seen[*agreed];
    ClassificationReport rep;
    rep.profile = {split.clusters, split.draws};
    rep.structure = key.structure;
    auto it = reference_table().find(key);
    if (it == reference_table().end()) {
        std::ostringstream os;
        os << "classify15: no family has eigen shape " << key.shape << " with structure (" << key.structure.kernel_dim << ","
           << key.structure.image_dim << "," << key.structure.product_dim << "," << key.structure.phi_rank << ")";
        fail(ErrorKind::Unrecognized, os.str());
    }
    Triangularization tri = triangularize(AlgebraBasis(g), seed);
    rep.triangularizer = tri.conjugator;
    GroupChart chart(std::nullopt, {}, tri.upper.gens());
    rep.closure = closure_signature(chart, std::nullopt, seed);
    const auto& candidates = it->second;
    if (candidates.size() == 1) {
        rep.label = candidates.front();
        return rep;
    }
    double d = plane_curvature_sign(tri.upper, seed);
    rep.detII = d;
    if (d < 0) rep.label = Family::N4;
    else if (d > 0) rep.label = Family::N4p;
    else fail(ErrorKind::IllConditioned, "classify15: curvature sign on plane subgroups is not resolved");
    return rep;
}

std::vector<Mat4> centralizer(std::span<const Mat4> gens) {
    using M16 = Eigen::Matrix<double, 16, 16>;
    const Eigen::Index k = static_cast<Eigen::Index>(gens.size());
    Eigen::MatrixXd A(16 * k + 1, 16);
    double scale = 0.0;
    for (const Mat4& g : gens) scale = std::max(scale, g.norm());
    for (Eigen::Index i = 0; i < k; ++i) {
        Mat4 G = gens[static_cast<std::size_t>(i)] / scale;
        M16 L = M16::Zero();
        // vec(XG - GX) = (G^T kron I - I kron G) vec(X), column-major vec
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                L.block<4, 4>(4 * a, 4 * b) += G(b, a) * Mat4::Identity();
                if (a == b) L.block<4, 4>(4 * a, 4 * b) -= G;
            }
        A.middleRows(16 * i, 16) = L;
    }
    A.row(16 * k).setZero();
    for (int d = 0; d < 4; ++d) A(16 * k, 5 * d) = 1.0;
    Eigen::MatrixXd Z = null_space(A, 1e-9);
    std::vector<Mat4> out;
    for (Eigen::Index c = 0; c < Z.cols(); ++c) {
        Eigen::Matrix<double, 16, 1> col = Z.col(c);
        out.push_back(Eigen::Map<Mat4>(col.data()));
    }
    return out;
}

CuspReport classify_cusp(const AlgebraBasis& basis2d, std::uint64_t seed) {
    if (basis2d.dim() != 2) fail(ErrorKind::BadParams, "classify_cusp: basis must be 2-dimensional");
    CuspReport rep;
    auto g = normalized(basis2d.gens());
    AlgebraBasis gb(g);
    Triangularization tri = triangularize(gb, seed);
    rep.triangularizer = tri.conjugator;
    rep.convexity = is_convex_orbit(tri.upper, seed);

    auto cent = centralizer(g);
    rep.centralizer_dim = static_cast<int>(cent.size());
    if (cent.size() == 3) {
        try {
            rep.ambient = classify15(AlgebraBasis(cent), seed).label;
        } catch (const Error&) {
            rep.ambient.reset();
        }
    }
    SpectralSplit split = spectral_split(g, seed);
    rep.shape = EigenProfile{split.clusters, split.draws}.shape();
    if (rep.convexity.verdict != Verdict::Convex) return rep;

    rep.is_cusp = true;
    auto w = cluster_weights(g, split);
    if (rep.shape == "(1)(1)(1)(1)") {
        rep.label = Family::CuspC;
        Eigen::MatrixXd A(3, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        A.row(2).setOnes();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
        Eigen::Vector4d alpha = svd.matrixV().col(3);
        rep.rst = normalize_C(ProjTriple(alpha(0), alpha(1), alpha(2))).canonical;
    } else if (rep.shape == "(2)(1)(1)") {
        rep.label = Family::CuspE;
        std::size_t dbl = 0;
        std::vector<std::size_t> simple;
        for (std::size_t c = 0; c < split.clusters.size(); ++c) {
            if (split.clusters[c].multiplicity == 2) dbl = c;
            else simple.push_back(c);
        }
        const Eigen::MatrixXd& G = split.eigenspaces[dbl];
        Eigen::MatrixXd u = common_eigenvectors(g, G);
        if (u.cols() != 1) fail(ErrorKind::Unrecognized, "classify_cusp: Jordan block not detected");
        Eigen::MatrixXd basis(4, 2);
        basis.col(0) = u.col(0);
        Eigen::MatrixXd comp = G * orth_complement(G.transpose() * u);
        basis.col(1) = comp.col(0);
        Eigen::Matrix2d coef;
        Eigen::Vector2d nil;
        for (int k = 0; k < 2; ++k) {
            double a = w[static_cast<std::size_t>(k)][dbl];
            double b = (w[static_cast<std::size_t>(k)][simple[0]] - w[static_cast<std::size_t>(k)][simple[1]]) / 2;
            coef(k, 0) = a;
            coef(k, 1) = b;
            Eigen::MatrixXd R = basis.transpose() * g[static_cast<std::size_t>(k)] * basis;
            nil(k) = R(0, 1);
        }
        Eigen::Vector2d rs = coef.fullPivLu().solve(nil);
        rep.s_prime = normalize_E(rs(0), rs(1)).s_prime;
    } else if (rep.shape == "(3)(1)") {
        rep.label = Family::CuspF;
    } else if (rep.shape == "(3,1)") {
        rep.label = Family::CuspN;
    } else {
        fail(ErrorKind::Unrecognized, "classify_cusp: convex orbit but eigen shape " + rep.shape + " matches no cusp family");
    }
    return rep;
}

}  // namespace cusp
