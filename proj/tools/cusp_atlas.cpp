#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cusp/classify.hpp"
#include "cusp/curvature.hpp"
#include "cusp/io.hpp"
#include "cusp/normalform.hpp"
#include "cusp/orbits.hpp"
#include "cusp/verify.hpp"

using namespace cusp;

namespace {

constexpr int exit_verify = 1;
constexpr int exit_parse = 2;
constexpr int exit_domain = 3;

std::string read_input(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

Family family_arg(const std::string& s) {
    auto f = parse_family(s);
    if (!f) fail(ErrorKind::ParseError, "unknown family: " + s);
    return *f;
}

std::string projective(const std::array<double, 3>& v) {
    std::ostringstream os;
    os << std::setprecision(12) << '[' << v[0] << ':' << v[1] << ':' << v[2] << ']';
    return os.str();
}

void need(const std::vector<double>& p, std::size_t n, const std::string& what) {
    if (p.size() != n) fail(ErrorKind::ParseError, what + " takes " + std::to_string(n) + " parameters");
}

int cmd_classify(const std::string& path, std::uint64_t seed) {
    BasisDocument doc = parse_basis_document(read_input(path));
    AlgebraBasis basis(doc.matrices);
    json out = basis.dim() == 3 ? to_json(classify15(basis, seed)) : to_json(classify_cusp(basis, seed));
    std::cout << dump(out) << '\n';
    return 0;
}

int cmd_normalize(const std::string& family, const std::vector<double>& p, std::uint64_t seed, double tol) {
    Family f = family_arg(family);
    json out;
    out["family"] = std::string(name(f));
    out["input"] = p;
    ConjugacyCertificate cert = identity_certificate(cusp_n_chart());
    if (f == Family::C || f == Family::CuspC) {
        need(p, 3, "C");
        CNormalForm c = normalize_C(ProjTriple(p[0], p[1], p[2]));
        out["canonical"] = projective(c.display);
        out["rst"] = c.canonical.v();
        out["negated"] = c.negated;
        out["permutation"] = c.permutation.perm;
        cert = c.certificate;
    } else if (f == Family::E1 || f == Family::CuspE) {
        need(p, 2, "E");
        ENormalForm e = normalize_E(p[0], p[1]);
        out["canonical"] = json{{"r", 1.0}, {"s", e.s_prime}};
        out["s_prime"] = e.s_prime;
        cert = e.certificate;
    } else if (f == Family::F1 || f == Family::CuspF) {
        need(p, 2, "F");
        FNormalForm fn = normalize_F(p[0], p[1]);
        out["canonical"] = json{{"r", 1.0}, {"s", 0.0}};
        cert = fn.certificate;
    } else if (f == Family::CuspN) {
        out["canonical"] = json::object();
    } else {
        fail(ErrorKind::BadParams, "normalize: no normal form for " + std::string(name(f)));
    }
    ConjugacyCheck chk = verify_conjugacy(cert, 50, seed, tol);
    out["certificate"] = to_json(cert, chk);
    std::cout << dump(out) << '\n';
    return 0;
}

int cmd_curvature(const std::string& family, const std::vector<double>& p, const std::vector<double>& point) {
    Family f = family_arg(family);
    need(point, 3, "--point");
    FamilyParams params;
    std::optional<GroupChart> chart;
    if (f == Family::C || f == Family::CuspC) {
        need(p, 3, "C");
        params.rst = ProjTriple(p[0], p[1], p[2]);
        chart = cusp_c_chart(*params.rst);
    } else if (f == Family::CuspN) {
        chart = cusp_n_chart();
    } else {
        need(p, 2, std::string(name(f)));
        params.rs = std::array<double, 2>{p[0], p[1]};
        Family base = f == Family::CuspE ? Family::E1 : f == Family::CuspF ? Family::F1 : f;
        chart = rs_plane_chart(base, p[0], p[1]);
    }
    Family table = f == Family::CuspC ? Family::C : f == Family::CuspE ? Family::E1 : f == Family::CuspF ? Family::F1
                 : f == Family::CuspN ? Family::N4p : f;
    Vec3 x(point[0], point[1], point[2]);
    double closed = closed_form_detII(table, params, x);
    SecondFormResult r = evaluate_second_form(OrbitSurface(*chart, Vec4(x(0), x(1), x(2), 1.0)), closed);
    json out;
    out["family"] = std::string(name(f));
    out["params"] = p;
    out["point"] = point;
    out["det_numeric"] = r.det_numeric;
    out["det_fd"] = r.det_fd;
    out["fd_error"] = r.fd_error;
    out["det_closed"] = closed;
    out["verdict"] = std::string(to_string(r.verdict));
    std::cout << dump(out) << '\n';
    return 0;
}

int cmd_orbit_closure(const std::string& family, std::uint64_t seed) {
    Family f = family_arg(family);
    if (is_cusp(f)) fail(ErrorKind::BadParams, "orbit-closure: expects one of the fifteen families");
    GroupChart chart = family_chart(f);
    json out;
    out["family"] = std::string(name(f));
    out["signature"] = to_json(closure_signature(chart, std::nullopt, seed));
    json rows = json::array();
    bool all = true;
    const ClosureRow& row = closure_row(f);
    const double coef[4] = {1.0, 0.7, 1.3, 0.9};
    for (const auto& e : row.entries) {
        Vec4 v = Vec4::Zero();
        std::string sub;
        for (int i = 0; i < 4; ++i)
            if (e.mask & (1u << i)) {
                v(i) = coef[i];
                sub += (sub.empty() ? "e" : ",e") + std::to_string(i + 1);
            }
        int got = orbit_closure_dim(chart, ProjPoint(v));
        all = all && got == e.dim;
        rows.push_back({{"subspace", "<" + sub + ">"}, {"expected", e.dim}, {"observed", got}, {"pass", got == e.dim}});
    }
    out["table"] = rows;
    out["pass"] = all;
    std::cout << dump(out) << '\n';
    return 0;
}

int cmd_region(int resolution, const std::string& csv, const std::string& svg) {
    auto cells = cusp_c_region(resolution);
    if (!svg.empty()) {
        std::ofstream os(svg);
        write_region_svg(os, cells, resolution);
    }
    if (csv.empty() || csv == "-") {
        write_region_csv(std::cout, cells);
    } else {
        std::ofstream os(csv);
        write_region_csv(os, cells);
    }
    return 0;
}

int cmd_mesh(const std::string& family, const std::vector<double>& p, double k, int grid, double extent,
             const std::string& obj, const std::string& csv) {
    Family f = family_arg(family);
    if (!is_cusp(f)) fail(ErrorKind::BadParams, "mesh: expects a cusp family");
    FamilyParams params;
    if (f == Family::CuspC) {
        need(p, 3, "Cusp:C");
        params.rst = ProjTriple(p[0], p[1], p[2]);
    } else if (f == Family::CuspE || f == Family::CuspF) {
        need(p, 2, std::string(name(f)));
        params.rs = std::array<double, 2>{p[0], p[1]};
    }
    Mesh m = horosphere_sample(f, params, k, grid, extent);
    if (obj.empty() || obj == "-") {
        write_obj(std::cout, m);
    } else {
        std::ofstream os(obj);
        write_obj(os, m);
    }
    if (!csv.empty()) {
        std::ofstream os(csv);
        write_csv(os, m);
    }
    return 0;
}

int cmd_verify(const VerifyOptions& opt, const std::string& out) {
    VerifyReport rep = run_verify(opt);
    if (out.empty() || out == "-") {
        write_jsonl(std::cout, rep);
    } else {
        std::ofstream os(out);
        write_jsonl(os, rep);
        std::cout << summary_json(rep).dump() << '\n';
    }
    return rep.ok() ? 0 : exit_verify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cusp-atlas: abelian subgroups of PGL(4,R) and generalized cusps"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string seed_text;
    double tol = 1e-10;
    app.add_option("--seed", seed_text, "RNG seed (decimal or 0x hex); CUSP_ATLAS_SEED overrides the default");
    app.add_option("--tol", tol, "Residual tolerance for certificates and verification");

    std::string input = "-";
    auto* classify = app.add_subcommand("classify", "Classify a JSON basis document (2 or 3 matrices)");
    classify->add_option("input", input, "Path or - for stdin");

    std::string family;
    std::vector<double> params;
    auto* normalize = app.add_subcommand("normalize", "Reduce cusp parameters to the canonical form");
    normalize->add_option("family", family)->required();
    normalize->add_option("params", params);

    std::vector<double> point{1, 1, 1};
    auto* curvature = app.add_subcommand("curvature", "det II of a plane subgroup orbit at a point");
    curvature->add_option("family", family)->required();
    curvature->add_option("params", params);
    curvature->add_option("--point", point, "Affine base point x y z")->expected(3);

    auto* closure = app.add_subcommand("orbit-closure", "Orbit-closure signature and table check");
    closure->add_option("family", family)->required();

    int resolution = 200;
    std::string csv, svg, obj;
    auto* region = app.add_subcommand("region", "Convexity region of Cusp:C in the chart t = 1");
    region->add_option("--resolution", resolution, "Cells per axis")->capture_default_str()->check(CLI::Range(16, 100000));
    region->add_option("--csv", csv, "Write r,s,convex rows");
    region->add_option("--svg", svg, "Write the shaded region");

    double k = 1.0, extent = 1.0;
    int grid = 9;
    auto* mesh = app.add_subcommand("mesh", "Horosphere leaf as OBJ and CSV");
    mesh->add_option("family", family)->required();
    mesh->add_option("params", params);
    mesh->add_option("--k", k, "Leaf parameter, k > 0")->capture_default_str();
    mesh->add_option("--grid", grid, "Vertices per axis")->capture_default_str();
    mesh->add_option("--extent", extent, "Half-width of the parameter square")->capture_default_str();
    mesh->add_option("--obj", obj, "Write Wavefront OBJ");
    mesh->add_option("--csv", csv, "Write vertices with curvature");

    VerifyOptions vopt;
    std::string out;
    auto* verify = app.add_subcommand("verify", "Run a verification suite, JSONL output");
    verify->add_option("suite", vopt.suite)->check(CLI::IsMember(verify_suites()));
    verify->add_option("--samples", vopt.samples, "Draws per randomized check")->capture_default_str();
    verify->add_option("--threads", vopt.threads, "Worker threads, 0 for all cores")->capture_default_str();
    verify->add_option("--out", out, "Write JSONL here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_parse;
    }

    try {
        std::uint64_t seed = default_seed;
        if (const char* env = std::getenv("CUSP_ATLAS_SEED")) seed = std::stoull(env, nullptr, 0);
        if (!seed_text.empty()) seed = std::stoull(seed_text, nullptr, 0);
        if (*classify) return cmd_classify(input, seed);
        if (*normalize) return cmd_normalize(family, params, seed, tol);
        if (*curvature) return cmd_curvature(family, params, point);
        if (*closure) return cmd_orbit_closure(family, seed);
        if (*region) return cmd_region(resolution, csv, svg);
        if (*mesh) return cmd_mesh(family, params, k, grid, extent, obj, csv);
        if (*verify) {
            vopt.seed = seed;
            vopt.tol = tol;
            return cmd_verify(vopt, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::ParseError ? exit_parse : exit_domain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << '\n';
        return exit_parse;
    }
    return 0;
}
