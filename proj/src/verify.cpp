#include "cusp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

namespace cusp {

namespace {

using Task = std::function<std::vector<CheckRecord>()>;

std::string fam(Family f) { return std::string(name(f)); }

CheckRecord record(std::string check, std::string family, json params, json expected, json observed, double residual,
                   bool pass) {
    return {std::move(check), std::move(family), std::move(params), std::move(expected), std::move(observed), residual, pass};
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// ---- detII ----

std::vector<CheckRecord> detii_family(Family f, int samples, std::uint64_t seed) {
    Rng rng(seed);
    int mismatches = 0, skipped = 0;
    double worst_zero = 0.0;
    const bool closed_zero = closed_form_detII(f, {ProjTriple(1, 2, 3), std::array<double, 2>{1, 0}}, Vec3(1, 1, 1)) == 0.0;
    for (int i = 0; i < samples; ++i) {
        FamilyParams params;
        std::optional<GroupChart> chart;
        if (f == Family::C) {
            double r = rng.uniform(-2, 2), s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
            params.rst = ProjTriple(r, s, t);
            chart = cusp_c_chart(*params.rst);
        } else {
            double r = rng.uniform(-2, 2), s = rng.uniform(-2, 2);
            params.rs = std::array<double, 2>{r, s};
            chart = rs_plane_chart(f, r, s);
        }
        Vec3 p(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2));
        double closed = closed_form_detII(f, params, p);
        double numeric = 0.0;
        bool degenerate = false;
        try {
            numeric = second_form_det(OrbitSurface(*chart, Vec4(p(0), p(1), p(2), 1.0)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateTangent) throw;
            degenerate = true;
        }
        if (closed_zero) {
            if (degenerate) {
                ++skipped;
                continue;
            }
            worst_zero = std::max(worst_zero, std::abs(numeric));
            if (std::abs(numeric) > 1e-6) ++mismatches;
        } else if (std::abs(closed) > tol::sign) {
            if (degenerate || (numeric > 0) != (closed > 0) || std::abs(numeric) <= tol::sign) ++mismatches;
        }
    }
    return {record("detII.sign", fam(f), {{"samples", samples}}, json{{"mismatches", 0}},
                   json{{"mismatches", mismatches}, {"degenerate_zero_rows", skipped}}, worst_zero, mismatches == 0)};
}

std::vector<CheckRecord> detii_boundary(std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        double r = rng.uniform(0.3, 2) * (rng.unit() < 0.5 ? -1 : 1);
        Vec4 p(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2), 1.0);
        worst = std::max(worst, std::abs(second_form_det(OrbitSurface(rs_plane_chart(Family::E1, r, r / 2), p))));
    }
    return {record("detII.boundary", "E1", {{"s", "r/2"}, {"points", 20}}, 0.0, worst, worst, worst <= 1e-8)};
}

std::vector<CheckRecord> detii_invariance(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckRecord> out;
    for (Family f : {Family::C, Family::E1, Family::F0, Family::F1, Family::N1, Family::N4, Family::N4p}) {
        GroupChart chart = f == Family::C ? cusp_c_chart(ProjTriple(1, 2, 3)) : rs_plane_chart(f, 0.7, 0.2);
        Vec4 p(1.1, 0.9, 1.3, 1.0);
        double d0 = second_form_det(OrbitSurface(chart, p));
        int flips = 0;
        for (int k = 0; k < 10; ++k) {
            std::array<double, 2> u{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
            Vec4 q = chart.element(u) * p;
            if (std::abs(q(3)) < 1e-6) continue;
            q /= q(3);
            double d = second_form_det(OrbitSurface(chart, q));
            if ((d > 0) != (d0 > 0)) ++flips;
        }
        out.push_back(record("detII.invariance", fam(f), {{"moves", 10}}, 0, flips, 0.0, flips == 0));
    }
    return out;
}

// ---- closures ----

Vec4 subspace_point(unsigned mask) {
    static const double coef[4] = {1.0, 0.7, 1.3, 0.9};
    Vec4 p = Vec4::Zero();
    for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) p(i) = coef[i];
    return p;
}

std::string mask_name(unsigned mask) {
    std::string s = "<";
    bool first = true;
    for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) {
            s += (first ? "e" : ",e") + std::to_string(i + 1);
            first = false;
        }
    return s + ">";
}

std::vector<CheckRecord> closure_rows(const ClosureRow& row, double rank_tol) {
    std::vector<CheckRecord> out;
    SamplingConfig cfg;
    cfg.rank_tol = rank_tol;
    GroupChart chart = family_chart(row.family);
    for (const auto& e : row.entries) {
        int got = orbit_closure_dim(chart, ProjPoint(subspace_point(e.mask)), cfg);
        out.push_back(record("closures.row", fam(row.family), {{"subspace", mask_name(e.mask)}}, e.dim, got, 0.0, got == e.dim));
    }
    int got = orbit_closure_dim(chart, ProjPoint(Vec4(1.0, 0.8, 1.2, 0.9)), cfg);
    out.push_back(record("closures.generic", fam(row.family), {{"point", "[1:0.8:1.2:0.9]"}}, row.generic_dim, got, 0.0,
                         got == row.generic_dim));
    return out;
}

std::vector<CheckRecord> closure_signatures(std::uint64_t seed) {
    std::vector<std::pair<Family, ClosureSignature>> sigs;
    for (Family f : catalog_families()) sigs.emplace_back(f, closure_signature(family_chart(f), std::nullopt, seed));
    std::vector<CheckRecord> out;
    for (std::size_t i = 0; i < sigs.size(); ++i)
        for (std::size_t j = i + 1; j < sigs.size(); ++j) {
            bool pair4 = (sigs[i].first == Family::N4 && sigs[j].first == Family::N4p) ||
                         (sigs[i].first == Family::N4p && sigs[j].first == Family::N4);
            bool equal = sigs[i].second == sigs[j].second;
            if (pair4) {
                out.push_back(record("closures.signature_equal", fam(sigs[i].first) + "/" + fam(sigs[j].first), nullptr,
                                     true, equal, 0.0, equal));
            } else if (equal) {
                out.push_back(record("closures.signature_distinct", fam(sigs[i].first) + "/" + fam(sigs[j].first), nullptr,
                                     false, true, 0.0, false));
            }
        }
    out.push_back(record("closures.signature_count", "all", nullptr, 14,
                         [&] {
                             std::set<std::vector<int>> keys;
                             for (const auto& [f, s] : sigs) {
                                 std::vector<int> k = s.dims;
                                 k.push_back(s.fixed_set_dim);
                                 keys.insert(k);
                             }
                             return static_cast<int>(keys.size());
                         }(),
                         0.0, true));
    out.back().pass = out.back().observed == 14;
    return out;
}

// ---- conjugators ----

CheckRecord conj_record(const ConjugacyCertificate& c, json params, std::uint64_t seed, double tol, std::string family) {
    ConjugacyCheck chk = verify_conjugacy(c, 50, seed, tol);
    double res = std::max(chk.max_residual, chk.algebra_residual);
    return record("conjugators." + c.name, std::move(family), std::move(params), json{{"max_residual", tol}}, res, res, chk.ok);
}

std::vector<CheckRecord> conjugators(std::uint64_t seed, double tol) {
    std::vector<CheckRecord> out;
    Rng rng(seed);
    for (int i = 0; i < 3; ++i) {
        double r = rng.uniform(0.5, 2) * (i == 2 ? -1 : 1), s = rng.uniform(-0.45, 0.45) * std::abs(r);
        out.push_back(conj_record(certificate_P(r, s), {{"r", r}, {"s", s}}, seed + 1, tol, "Cusp:E"));
        out.push_back(conj_record(certificate_Q(r, s), {{"r", r}, {"s", s}}, seed + 2, tol, "Cusp:E"));
        ENormalForm e = normalize_E(r, s);
        out.push_back(conj_record(e.certificate, {{"r", r}, {"s", s}}, seed + 3, tol, "Cusp:E"));
        double rf = rng.uniform(0.2, 3), sf = rng.uniform(-2, 2);
        out.push_back(conj_record(certificate_R(rf), {{"r", rf}}, seed + 4, tol, "Cusp:F"));
        out.push_back(conj_record(certificate_S(rf, sf), {{"r", rf}, {"s", sf}}, seed + 5, tol, "Cusp:F"));
        out.push_back(conj_record(normalize_F(rf, sf).certificate, {{"r", rf}, {"s", sf}}, seed + 6, tol, "Cusp:F"));
        double t = rng.uniform(-2, 2);
        out.push_back(conj_record(type9_shear_certificate(t), {{"x", 0}, {"y", 0}, {"z", 1}, {"t", t}}, seed + 7, tol, "N6"));
        double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2), lam = rng.uniform(-2, 2);
        auto c9 = type9_certificate(x, y, lam * y, lam * x);
        if (c9) out.push_back(conj_record(*c9, {{"x", x}, {"y", y}, {"z", lam * y}, {"t", lam * x}}, seed + 8, tol, "N6"));
    }
    for (auto [r, s] : {std::pair{1.5, -0.3}, std::pair{-2.0, 0.7}, std::pair{0.8, 0.1}}) {
        ENormalForm e = normalize_E(r, s);
        out.push_back(conj_record(e.certificate, {{"r", r}, {"s", s}}, seed + 10, tol, "Cusp:E"));
    }
    for (int i = 0; i < 12; ++i) {
        double r = rng.uniform(-3, 3), s = rng.uniform(-3, 3), t = rng.uniform(-3, 3);
        if (!(r * s * t * (r + s + t) > 1e-3)) {
            --i;
            continue;
        }
        CNormalForm c = normalize_C(ProjTriple(r, s, t));
        out.push_back(conj_record(c.certificate, {{"rst", c.input.v()}}, seed + 9 + static_cast<std::uint64_t>(i), tol, "Cusp:C"));
    }
    return out;
}

// ---- normal forms ----

std::array<double, 3> brute_force_C(const ProjTriple& in) {
    std::array<double, 4> alpha{in[0], in[1], in[2], -(in[0] + in[1] + in[2])};
    std::array<int, 4> idx{0, 1, 2, 3};
    std::optional<std::array<double, 3>> best;
    do {
        for (double sg : {1.0, -1.0}) {
            std::array<double, 4> a;
            for (int k = 0; k < 4; ++k) a[static_cast<std::size_t>(k)] = sg * alpha[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            if (a[0] >= a[1] && a[1] >= a[2] && a[2] > 0 && a[3] < 0) {
                double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
                best = std::array<double, 3>{a[0] / n, a[1] / n, a[2] / n};
            }
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (!best) fail(ErrorKind::NotConvex, "brute force found no canonical representative");
    return *best;
}

std::vector<CheckRecord> normalforms(int samples, std::uint64_t seed) {
    Rng rng(seed);
    int disagreements = 0, not_idempotent = 0, outside = 0;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double r = rng.uniform(-3, 3), s = rng.uniform(-3, 3), t = rng.uniform(-3, 3);
        double R = r + s + t;
        if (!(r * s * t * R > 0) || std::min({std::abs(r), std::abs(s), std::abs(t), std::abs(R)}) < 1e-3) {
            --i;
            continue;
        }
        CNormalForm c = normalize_C(ProjTriple(r, s, t));
        auto bf = brute_force_C(ProjTriple(r, s, t));
        double d = 0;
        for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(bf[static_cast<std::size_t>(k)] - c.canonical[k]));
        worst = std::max(worst, d);
        if (d > 1e-12) ++disagreements;
        if (normalize_C(c.canonical).canonical.v() != c.canonical.v()) ++not_idempotent;
        if (!(c.canonical[0] >= c.canonical[1] && c.canonical[1] >= c.canonical[2] && c.canonical[2] > 0)) ++outside;
    }
    std::vector<CheckRecord> out;
    out.push_back(record("normalforms.C_bruteforce", "Cusp:C", {{"samples", samples}}, 0, disagreements, worst, disagreements == 0));
    out.push_back(record("normalforms.C_idempotent", "Cusp:C", {{"samples", samples}}, 0, not_idempotent, 0.0, not_idempotent == 0));
    out.push_back(record("normalforms.C_domain", "Cusp:C", {{"samples", samples}}, 0, outside, 0.0, outside == 0));

    int e_bad = 0, e_idem = 0, f_bad = 0;
    for (int i = 0; i < samples; ++i) {
        double r = rng.uniform(0.2, 3) * (rng.unit() < 0.5 ? -1 : 1);
        double s = rng.uniform(-0.49, 0.49) * std::abs(r);
        ENormalForm e = normalize_E(r, s);
        if (!(e.s_prime >= 0 && e.s_prime < 0.5)) ++e_bad;
        if (normalize_E(1.0, e.s_prime).s_prime != e.s_prime) ++e_idem;
        FNormalForm fn = normalize_F(rng.uniform(0.2, 3), rng.uniform(-2, 2));
        FNormalForm again = normalize_F(1.0, 0.0);
        if (!fn.certificate.target.generators().empty() && again.certificate.conjugator != Mat4::Identity()) ++f_bad;
    }
    out.push_back(record("normalforms.E_domain", "Cusp:E", {{"samples", samples}}, 0, e_bad, 0.0, e_bad == 0));
    out.push_back(record("normalforms.E_idempotent", "Cusp:E", {{"samples", samples}}, 0, e_idem, 0.0, e_idem == 0));
    out.push_back(record("normalforms.F_idempotent", "Cusp:F", {{"samples", samples}}, 0, f_bad, 0.0, f_bad == 0));
    return out;
}

// ---- classify ----

std::vector<Mat4> present(const AlgebraBasis& b, const Mat4& M, Rng& rng) {
    Eigen::Matrix3d mix;
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mix(i, j) = rng.uniform(-1, 1);
    } while (std::abs(mix.determinant()) < 0.2);
    Mat4 Minv = M.inverse();
    std::vector<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        Mat4 X = Mat4::Zero();
        for (int j = 0; j < 3; ++j) X += mix(i, j) * b[j];
        out.push_back(M * X * Minv);
    }
    return out;
}

Mat4 random_borel(Rng& rng) {
    Mat4 M = Mat4::Identity();
    for (int i = 0; i < 4; ++i) {
        M(i, i) = rng.uniform(0.5, 2.0);
        for (int j = i + 1; j < 4; ++j) M(i, j) = rng.uniform(-1, 1);
    }
    return M;
}

std::vector<CheckRecord> classify_family(Family f, int count, bool dense, std::uint64_t seed) {
    Rng rng(seed);
    int correct = 0, mislabels = 0, ill = 0, other = 0;
    json failures = json::array();
    AlgebraBasis base = algebra_basis(f);
    for (int i = 0; i < count; ++i) {
        Mat4 M = dense ? random_well_conditioned(rng, 10.0) : random_borel(rng);
        auto gens = present(base, M, rng);
        try {
            ClassificationReport rep = classify15(AlgebraBasis(gens), seed + static_cast<std::uint64_t>(i));
            if (rep.label == f) ++correct;
            else {
                ++mislabels;
                failures.push_back(fam(rep.label));
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IllConditioned) ++ill;
            else {
                ++other;
                failures.push_back(std::string(to_string(e.kind())));
            }
        }
    }
    std::string id = dense ? "classify.conjugates" : "classify.presentations";
    bool pass = dense ? (mislabels == 0 && other == 0) : (correct == count);
    return {record(id, fam(f), {{"count", count}}, json{{"correct", count}},
                   json{{"correct", correct}, {"mislabels", mislabels}, {"ill_conditioned", ill}, {"other_errors", other},
                        {"failures", failures}},
                   0.0, pass)};
}

std::vector<CheckRecord> classify_examples(std::uint64_t seed) {
    std::vector<CheckRecord> out;
    try {
        AlgebraBasis bad({elementary(1, 2), elementary(2, 3)});
        out.push_back(record("classify.not_abelian", "-", nullptr, "NotAbelian", "accepted", 0.0, false));
    } catch (const Error& e) {
        bool ok = e.kind() == ErrorKind::NotAbelian;
        out.push_back(record("classify.not_abelian", "-", nullptr, "NotAbelian", std::string(to_string(e.kind())), 0.0, ok));
    }
    struct CuspCase {
        Family label;
        GroupChart chart;
    };
    std::vector<CuspCase> cases{{Family::CuspC, cusp_c_chart(ProjTriple(1, 2, 3))},
                                {Family::CuspE, cusp_e_chart(1, 0.2)},
                                {Family::CuspF, cusp_f_chart(1, 0)},
                                {Family::CuspN, cusp_n_chart()}};
    Rng rng(seed);
    for (const auto& c : cases) {
        Mat4 M = random_well_conditioned(rng, 5.0);
        std::vector<Mat4> g;
        for (const Mat4& x : c.chart.generators()) g.push_back(M * x * M.inverse());
        std::string got = "error";
        bool ok = false;
        try {
            CuspReport rep = classify_cusp(AlgebraBasis(g), seed);
            got = rep.label ? fam(*rep.label) : "not a cusp";
            ok = rep.label == c.label;
        } catch (const Error& e) {
            got = std::string(to_string(e.kind()));
        }
        out.push_back(record("classify.cusp", fam(c.label), nullptr, fam(c.label), got, 0.0, ok));
    }
    return out;
}

std::vector<CheckRecord> haettel(std::uint64_t seed) {
    std::vector<CheckRecord> out;
    for (const auto& reg : haettel_regimes()) {
        HaettelAlgebra h = haettel_type_constructor(reg.type_id, reg.params);
        std::string got;
        bool ok = false;
        try {
            ClassificationReport rep = classify15(h.basis, seed);
            got = fam(rep.label);
            ok = rep.label == h.asserted;
        } catch (const Error& e) {
            got = std::string(to_string(e.kind()));
        }
        out.push_back(record("haettel.type" + std::to_string(reg.type_id), fam(h.asserted),
                             {{"params", reg.params}, {"regime", h.regime}}, fam(h.asserted), got, 0.0, ok));
    }
    return out;
}

// ---- horosphere ----

std::vector<CheckRecord> horosphere(std::uint64_t seed) {
    std::vector<CheckRecord> out;
    Rng rng(seed);
    for (int i = 0; i < 3; ++i) {
        double r = rng.uniform(0.5, 2), s = rng.uniform(-0.45, 0.45) * r;
        FamilyParams p;
        p.rs = std::array<double, 2>{r, s};
        double h1 = horosphere_sample(Family::CuspE, p, 1.0).origin(1);
        double worst = 0.0;
        for (double k : {std::numbers::e, std::numbers::e * std::numbers::e}) {
            Mesh m = horosphere_sample(Family::CuspE, p, k);
            double want = cusp_e_leaf_height(r, s, k) - cusp_e_leaf_height(r, s, 1.0);
            worst = std::max(worst, std::abs((m.origin(m.height_axis) - h1) - want));
        }
        out.push_back(record("horosphere.height", "Cusp:E", {{"r", r}, {"s", s}}, 0.0, worst, worst, worst <= 1e-9));
    }
    struct Leaf {
        Family f;
        FamilyParams p;
    };
    FamilyParams pc, pe, pf;
    pc.rst = ProjTriple(1, 2, 3);
    pe.rs = std::array<double, 2>{1, 0.2};
    pf.rs = std::array<double, 2>{1, 0};
    for (const Leaf& leaf : {Leaf{Family::CuspC, pc}, Leaf{Family::CuspE, pe}, Leaf{Family::CuspF, pf}, Leaf{Family::CuspN, {}}}) {
        double worst = std::numeric_limits<double>::infinity();
        int bad = 0;
        for (double k : {0.5, 1.0, std::numbers::e}) {
            Mesh m = horosphere_sample(leaf.f, leaf.p, k);
            for (double c : m.curvature) {
                worst = std::min(worst, c);
                if (!(c > 0)) ++bad;
            }
        }
        out.push_back(record("horosphere.curvature", fam(leaf.f), {{"leaves", 3}}, "positive", json{{"nonpositive", bad}}, worst,
                             bad == 0));
    }
    return out;
}

// ---- exp ----

std::vector<CheckRecord> exp_checks(int samples, std::uint64_t seed) {
    Rng rng(seed);
    double roundtrip = 0.0, inverse = 0.0;
    for (int i = 0; i < samples; ++i) {
        Mat4 X = Mat4::Zero();
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) X(a, b) = rng.uniform(-2, 2);
        roundtrip = std::max(roundtrip, (log_unipotent(exp_nilpotent(X)) - X).cwiseAbs().maxCoeff());
        inverse = std::max(inverse, (exp_nilpotent(X) * exp_nilpotent(-X) - Mat4::Identity()).cwiseAbs().maxCoeff());
    }
    std::vector<CheckRecord> out;
    out.push_back(record("exp.roundtrip", "-", {{"samples", samples}}, 1e-12, roundtrip, roundtrip, roundtrip <= 1e-12));
    out.push_back(record("exp.inverse", "-", {{"samples", samples}}, 1e-13, inverse, inverse, inverse <= 1e-13));
    for (Family f : catalog_families()) {
        GroupChart chart = family_chart(f);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            std::array<double, 3> u{}, v{}, w{};
            for (int k = 0; k < 3; ++k) {
                u[static_cast<std::size_t>(k)] = rng.uniform(-1, 1);
                v[static_cast<std::size_t>(k)] = rng.uniform(-1, 1);
                w[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k)];
            }
            Mat4 lhs = chart.element(w), rhs = chart.element(u) * chart.element(v);
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
            if (chart.has_closed_form())
                worst = std::max(worst, (chart.element(u) - chart.element_via_exp(u)).cwiseAbs().maxCoeff() /
                                            std::max(1.0, lhs.cwiseAbs().maxCoeff()));
        }
        out.push_back(record("exp.homomorphism", fam(f), {{"samples", 10}}, 1e-10, worst, worst, worst <= 1e-10));
    }
    GroupChart n = cusp_n_chart();
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.5, 0.25}, std::pair{3.0, -2.0}, std::pair{-0.125, 1.75}, std::pair{7.0, 5.0}}) {
        std::array<double, 2> ab{a, b};
        double corner = n.element(ab)(0, 3);
        double want = (a * a + b * b) / 2;
        worst = std::max(worst, std::abs(corner - want));
    }
    out.push_back(record("exp.cusp_n_corner", "Cusp:N", nullptr, 0.0, worst, worst, worst == 0.0));
    return out;
}

std::vector<Task> tasks_for(const std::string& suite, const VerifyOptions& opt) {
    std::vector<Task> t;
    const std::uint64_t seed = opt.seed;
    const int n = opt.samples;
    bool all = suite == "all";
    if (all || suite == "detII") {
        std::uint64_t k = 0;
        for (Family f : catalog_families()) {
            std::uint64_t s = sub_seed(seed, 100 + k++);
            t.push_back([f, n, s] { return detii_family(f, n, s); });
        }
        t.push_back([seed] { return detii_boundary(sub_seed(seed, 200)); });
        t.push_back([seed] { return detii_invariance(sub_seed(seed, 201)); });
    }
    if (all || suite == "closures") {
        for (const ClosureRow& row : closure_table()) t.push_back([&row] { return closure_rows(row, tol::rank); });
        t.push_back([seed] { return closure_signatures(seed); });
    }
    if (all || suite == "conjugators") {
        double tol = opt.tol;
        t.push_back([seed, tol] { return conjugators(sub_seed(seed, 300), tol); });
    }
    if (all || suite == "normalforms") {
        int m = std::max(n, 1000);
        t.push_back([seed, m] { return normalforms(m, sub_seed(seed, 400)); });
    }
    if (all || suite == "classify") {
        std::uint64_t k = 0;
        for (Family f : catalog_families()) {
            std::uint64_t s1 = sub_seed(seed, 500 + k), s2 = sub_seed(seed, 600 + k);
            ++k;
            t.push_back([f, s1] { return classify_family(f, 20, false, s1); });
            t.push_back([f, s2] { return classify_family(f, 34, true, s2); });
        }
        t.push_back([seed] { return classify_examples(sub_seed(seed, 700)); });
    }
    if (all || suite == "haettel") t.push_back([seed] { return haettel(seed); });
    if (all || suite == "horosphere") t.push_back([seed] { return horosphere(sub_seed(seed, 800)); });
    if (all || suite == "exp") t.push_back([seed, n] { return exp_checks(n, sub_seed(seed, 900)); });
    return t;
}

std::vector<std::string> uncovered(const VerifyReport& r) {
    std::set<std::string> seen;
    for (const auto& rec : r.records) {
        seen.insert(rec.family);
        seen.insert(rec.check);
    }
    std::vector<std::string> missing;
    for (Family f : catalog_families())
        if (!seen.count(fam(f))) missing.push_back(fam(f));
    for (Family f : cusp_families())
        if (!seen.count(fam(f))) missing.push_back(fam(f));
    for (const char* c : {"conjugators.P", "conjugators.Q", "conjugators.R", "conjugators.S", "conjugators.P*Q",
                          "conjugators.R*S", "conjugators.shear -t*E14", "conjugators.block change of basis",
                          "conjugators.signed permutation"})
        if (!seen.count(c)) missing.push_back(c);
    return missing;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"detII", "closures", "conjugators", "normalforms", "classify",
                                            "haettel", "horosphere", "exp", "all"};
    return s;
}

Mat4 random_well_conditioned(Rng& rng, double cond_max) {
    for (;;) {
        Mat4 M;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M(i, j) = rng.normal();
        Eigen::JacobiSVD<Mat4> svd(M);
        const auto& sv = svd.singularValues();
        if (sv(3) > 0 && sv(0) / sv(3) <= cond_max) return M / sv(0);
    }
}

VerifyReport run_verify(const VerifyOptions& opt) {
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), opt.suite) == names.end())
        fail(ErrorKind::BadParams, "unknown verify suite: " + opt.suite);
    auto start = std::chrono::steady_clock::now();
    std::vector<Task> tasks = tasks_for(opt.suite, opt);
    std::vector<std::vector<CheckRecord>> results(tasks.size());
    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i]();
            } catch (const std::exception& e) {
                results[i] = {record("task.error", "-", {{"task", i}}, "no exception", e.what(), 0.0, false)};
            }
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    VerifyReport rep;
    rep.suite = opt.suite;
    for (auto& r : results)
        for (auto& rec : r) {
            (rec.pass ? rep.passed : rep.failed)++;
            rep.records.push_back(std::move(rec));
        }
    if (opt.suite == "all") rep.uncovered = uncovered(rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json to_json(const CheckRecord& r) {
    json j;
    j["check"] = r.check;
    j["family"] = r.family;
    j["params"] = r.params;
    j["expected"] = r.expected;
    j["observed"] = r.observed;
    j["residual"] = r.residual;
    j["pass"] = r.pass;
    return j;
}

json summary_json(const VerifyReport& r) {
    json j;
    j["summary"] = r.suite;
    j["records"] = r.records.size();
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["uncovered"] = r.uncovered;
    j["ok"] = r.ok();
    return j;
}

void write_jsonl(std::ostream& os, const VerifyReport& r) {
    for (const auto& rec : r.records) os << to_json(rec).dump() << '\n';
    os << summary_json(r).dump() << '\n';
}

}  // namespace cusp
