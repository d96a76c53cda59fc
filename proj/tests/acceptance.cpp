// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>
#include <vector>
#include <string>

#include "cusp/classify.hpp"
#include "cusp/curvature.hpp"
#include "cusp/verify.hpp"

using namespace cusp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string failures(const VerifyReport& r, int limit = 4) {
    std::string s;
    int n = 0;
    for (const auto& rec : r.records) {
        if (rec.pass) continue;
        if (n++ < limit) s += " [" + rec.check + " " + rec.family + "]";
    }
    if (n > limit) s += " ...";
    return s;
}

VerifyReport suite(const std::string& name, int samples = 100) {
    VerifyOptions o;
    o.suite = name;
    o.samples = samples;
    return run_verify(o);
}

std::string counts(const VerifyReport& r) {
    return std::to_string(r.passed) + "/" + std::to_string(r.passed + r.failed) + " checks";
}

Outcome suite_with_limit(const std::string& name, double limit) {
    auto t0 = Clock::now();
    VerifyReport r = suite(name);
    double sec = since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.2f s (limit %.0f s)", sec, limit);
    return {r.failed == 0 && sec <= limit, counts(r) + buf + failures(r)};
}

Outcome crit_detII_table() { return suite_with_limit("detII", 10.0); }

Outcome crit_closure_table() { return suite_with_limit("closures", 10.0); }

bool convex(const GroupChart& chart) { return is_convex_orbit(AlgebraBasis(chart.generators())).verdict == Verdict::Convex; }

Outcome crit_convexity_domains() {
    int bad_c = 0, bad_e = 0, bad_f = 0, bad_flat = 0;
    const int n = 200;
    const double extent = 3.0, h = 2 * extent / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double r = -extent + (i + 0.5) * h, s = -extent + (j + 0.5) * h;
            bool expected = r * s * (r + s + 1) > 0;
            if (convex(cusp_c_chart(ProjTriple(r, s, 1))) != expected) ++bad_c;
        }
    }
    Rng rng(default_seed);
    for (int k = 0; k < 500; ++k) {
        double r, s;
        do {
            r = rng.uniform(-3, 3);
            s = rng.uniform(-3, 3);
        } while (std::abs(r) < 0.05 || std::abs(std::abs(s) - std::abs(r) / 2) < 1e-3);
        if (convex(rs_plane_chart(Family::E1, r, s)) != (std::abs(s) < std::abs(r) / 2)) ++bad_e;
    }
    for (int k = 0; k < 20; ++k) {
        double r = rng.uniform(0.2, 3) * (rng.unit() < 0.5 ? -1 : 1);
        OrbitSurface surf(rs_plane_chart(Family::E1, r, r / 2),
                          Vec4(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2), 1.0));
        if (std::abs(second_form_det(surf)) > 1e-8) ++bad_flat;
    }
    for (int k = 0; k < 200; ++k) {
        double r;
        do r = rng.uniform(-3, 3);
        while (std::abs(r) < 1e-3);
        double s = rng.uniform(-3, 3);
        if (convex(rs_plane_chart(Family::F1, r, s)) != (r > 0)) ++bad_f;
    }
    return {bad_c + bad_e + bad_f + bad_flat == 0,
            "C grid mismatches " + std::to_string(bad_c) + "/40000, E " + std::to_string(bad_e) + "/500, E(r,r/2) " +
                std::to_string(bad_flat) + "/20, F " + std::to_string(bad_f) + "/200"};
}

Outcome crit_certificates() {
    VerifyReport r = suite("conjugators", 50);
    double worst = 0.0;
    for (const auto& rec : r.records) worst = std::max(worst, rec.residual);
    char buf[64];
    std::snprintf(buf, sizeof buf, ", max residual %.2e", worst);
    return {r.failed == 0 && worst <= 1e-10, counts(r) + buf + failures(r)};
}

Outcome crit_normal_forms() {
    VerifyReport r = suite("normalforms");
    return {r.failed == 0, counts(r) + failures(r)};
}

Outcome crit_classifier() {
    VerifyReport base = suite("classify");
    VerifyReport haettel = suite("haettel");
    Rng rng(default_seed ^ 0xC0FFEEULL);
    const auto& fams = catalog_families();
    int ok = 0, ill = 0, wrong = 0;
    const int trials = 500;
    for (int k = 0; k < trials; ++k) {
        Family f = fams[static_cast<std::size_t>(k) % fams.size()];
        Mat4 M = random_well_conditioned(rng, 1e3);
        try {
            if (classify15(algebra_basis(f).conjugated(M), static_cast<std::uint64_t>(k)).label == f) ++ok;
            else ++wrong;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IllConditioned) ++ill;
            else ++wrong;
        }
    }
    bool conj_ok = wrong == 0 && ok >= 0.99 * trials;
    std::string d = "catalog " + counts(base) + ", conjugates " + std::to_string(ok) + "/" + std::to_string(trials) +
                    " (IllConditioned " + std::to_string(ill) + ", other " + std::to_string(wrong) + "), Haettel regimes " +
                    counts(haettel) + failures(base) + failures(haettel);
    return {base.failed == 0 && haettel.failed == 0 && conj_ok, d};
}

Outcome crit_exponentials() {
    VerifyReport r = suite("exp");
    return {r.failed == 0, counts(r) + failures(r)};
}

Outcome crit_horospheres() {
    VerifyReport r = suite("horosphere");
    return {r.failed == 0, counts(r) + failures(r)};
}

Outcome crit_full_verify() {
    auto t0 = Clock::now();
    VerifyReport r = suite("all");
    double sec = since(t0);
    char buf[96];
    std::snprintf(buf, sizeof buf, ", %.2f s (limit 60 s), uncovered %zu", sec, r.uncovered.size());
    return {r.ok() && sec <= 60.0, counts(r) + buf + failures(r)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"det II table", crit_detII_table},
        {"orbit-closure table", crit_closure_table},
        {"convexity domains", crit_convexity_domains},
        {"conjugator certificates", crit_certificates},
        {"normal forms", crit_normal_forms},
        {"classifier round trip", crit_classifier},
        {"exponential exactness", crit_exponentials},
        {"horospheres", crit_horospheres},
        {"verify all", crit_full_verify},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
