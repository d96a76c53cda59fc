#include "cusp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "cusp/random.hpp"

namespace cusp {

namespace {

constexpr int max_draws = 8;
constexpr double link_rel = 1e-2;   // relative to spectral radius
constexpr double link_abs = 1e-3;   // relative to the Frobenius norm
constexpr double gap_factor = 5.0;
constexpr double spread_factor = 3.0;  // cluster diameter must stay below link / spread_factor
constexpr double rank_rel = 1e-9;

double gens_scale(std::span<const Mat4> gens) {
    double s = 0.0;
    for (const Mat4& g : gens) s = std::max(s, g.norm());
    return std::max(s, 1e-300);
}

struct Attempt {
    bool ok = false;
    SpectralSplit split;
};

Attempt analyse(const Mat4& X) {
    Attempt out;
    out.split.generic = X;
    Eigen::EigenSolver<Mat4> es(X, false);
    if (es.info() != Eigen::Success) return out;
    Eigen::Vector4cd ev = es.eigenvalues();
    double rho = ev.cwiseAbs().maxCoeff();
    double fro = X.norm();
    double link = std::max(link_rel * rho, link_abs * fro);
    if (link == 0.0) link = 1e-300;

    // single-linkage clustering
    std::array<int, 4> label{0, 1, 2, 3};
    for (int pass = 0; pass < 4; ++pass)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::abs(ev(i) - ev(j)) <= link) {
                    int m = std::min(label[i], label[j]);
                    label[i] = label[j] = m;
                }
    std::vector<int> ids(label.begin(), label.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<std::complex<double>> means;
    std::vector<int> mult;
    for (int id : ids) {
        std::complex<double> sum = 0.0;
        int m = 0;
        for (int i = 0; i < 4; ++i)
            if (label[i] == id) {
                sum += ev(i);
                ++m;
            }
        means.push_back(sum / static_cast<double>(m));
        mult.push_back(m);
    }
    for (std::size_t a = 0; a < means.size(); ++a)
        for (std::size_t b = a + 1; b < means.size(); ++b)
            if (std::abs(means[a] - means[b]) < gap_factor * link) return out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (label[i] == label[j] && std::abs(ev(i) - ev(j)) > link / spread_factor) return out;
    for (const auto& m : means)
        if (std::abs(m.imag()) > link) fail(ErrorKind::ComplexSpectrum, "spectrum of a generic element is not real");

    std::vector<std::size_t> order(means.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return means[a].real() < means[b].real(); });

    double scale = std::max(fro, 1e-300);
    int total = 0;
    for (std::size_t k : order) {
        EigenCluster c;
        c.value = means[k].real();
        c.multiplicity = mult[k];
        Mat4 A = X - c.value * Mat4::Identity();
        std::vector<int> ranks{4};
        Mat4 P = Mat4::Identity();
        double sc = 1.0;
        for (int p = 1; p <= c.multiplicity; ++p) {
            P = P * A;
            sc *= scale;
            Eigen::JacobiSVD<Mat4> svd(P);
            int r = 0;
            for (int i = 0; i < 4; ++i)
                if (svd.singularValues()(i) > rank_rel * sc) ++r;
            ranks.push_back(r);
        }
        if (4 - ranks.back() != c.multiplicity) return out;
        // blocks of size >= p: ranks[p-1] - ranks[p]
        std::vector<int> at_least;
        for (int p = 1; p <= c.multiplicity; ++p) at_least.push_back(ranks[p - 1] - ranks[p]);
        for (int p = 1; p <= c.multiplicity; ++p) {
            int next = p < c.multiplicity ? at_least[p] : 0;
            for (int n = 0; n < at_least[p - 1] - next; ++n) c.jordan.push_back(p);
        }
        std::sort(c.jordan.rbegin(), c.jordan.rend());
        int blocks = 0;
        for (int p : c.jordan) blocks += p;
        if (blocks != c.multiplicity) return out;
        Eigen::MatrixXd basis = null_space(P, rank_rel * sc);
        if (basis.cols() != c.multiplicity) return out;
        total += c.multiplicity;
        out.split.clusters.push_back(c);
        out.split.eigenspaces.push_back(basis);
    }
    if (total != 4) return out;
    Eigen::MatrixXd all(4, 4);
    int col = 0;
    for (const auto& b : out.split.eigenspaces) {
        all.middleCols(col, b.cols()) = b;
        col += static_cast<int>(b.cols());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(all);
    if (svd.singularValues().minCoeff() < 1e-8) return out;
    out.ok = true;
    return out;
}

}  // namespace

Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double abs_tol) {
    const Eigen::Index n = A.cols();
    if (A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > abs_tol) ++r;
    return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd range_space(const Eigen::MatrixXd& A, double abs_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > abs_tol) ++r;
    return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& Q) {
    const Eigen::Index n = Q.rows();
    if (Q.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
    return null_space(Q.transpose(), 1e-10);
}

SpectralSplit spectral_split(std::span<const Mat4> gens, std::uint64_t seed) {
    if (gens.empty()) fail(ErrorKind::EmptyInput, "spectral_split: no generators");
    Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
    double scale = gens_scale(gens);
    for (int draw = 1; draw <= max_draws; ++draw) {
        Mat4 X = Mat4::Zero();
        for (const Mat4& g : gens) X += rng.uniform(0.5, 1.5) * (rng.unit() < 0.5 ? -1.0 : 1.0) * g / scale;
        Attempt a = analyse(X);
        if (a.ok) {
            a.split.draws = draw;
            return a.split;
        }
    }
    fail(ErrorKind::IllConditioned, "could not separate the spectrum of a generic element");
}

std::vector<std::vector<double>> cluster_weights(std::span<const Mat4> gens, const SpectralSplit& split) {
    std::vector<std::vector<double>> w;
    for (const Mat4& g : gens) {
        std::vector<double> row;
        for (const auto& B : split.eigenspaces) {
            Eigen::MatrixXd R = B.transpose() * g * B;
            row.push_back(R.trace() / static_cast<double>(B.cols()));
        }
        w.push_back(row);
    }
    return w;
}

std::vector<Mat4> nilpotent_parts(std::span<const Mat4> gens, const SpectralSplit& split) {
    Mat4 B;
    int col = 0;
    for (const auto& b : split.eigenspaces) {
        B.middleCols(col, b.cols()) = b;
        col += static_cast<int>(b.cols());
    }
    Mat4 Binv = B.inverse();
    auto w = cluster_weights(gens, split);
    std::vector<Mat4> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Vec4 d;
        int c = 0;
        for (std::size_t k = 0; k < split.eigenspaces.size(); ++k)
            for (Eigen::Index j = 0; j < split.eigenspaces[k].cols(); ++j) d(c++) = w[i][k];
        Mat4 S = B * d.asDiagonal() * Binv;
        out.push_back(gens[i] - S);
    }
    return out;
}

Eigen::MatrixXd common_eigenvectors(std::span<const Mat4> gens, const Eigen::MatrixXd& space) {
    const Eigen::Index m = space.cols();
    double scale = gens_scale(gens);
    Eigen::MatrixXd stack(m * static_cast<Eigen::Index>(gens.size()), m);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Eigen::MatrixXd R = space.transpose() * gens[i] * space;
        double mu = R.trace() / static_cast<double>(m);
        stack.middleRows(static_cast<Eigen::Index>(i) * m, m) = R - mu * Eigen::MatrixXd::Identity(m, m);
    }
    Eigen::MatrixXd y = null_space(stack, 1e-8 * scale);
    return space * y;
}

std::vector<int> common_eigenspace_dims(std::span<const Mat4> gens, const SpectralSplit& split) {
    std::vector<int> dims;
    for (const auto& B : split.eigenspaces) dims.push_back(static_cast<int>(common_eigenvectors(gens, B).cols()));
    return dims;
}

}  // namespace cusp
