#include "cusp/io.hpp"

#include <cmath>
#include <ostream>

namespace cusp {

json to_json(const Mat4& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat4 mat4_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) fail(ErrorKind::ParseError, "matrix must be an array of 4 rows");
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 4) fail(ErrorKind::ParseError, "matrix rows must have 4 entries");
        for (int k = 0; k < 4; ++k) {
            const json& x = row[static_cast<std::size_t>(k)];
            if (!x.is_number()) fail(ErrorKind::ParseError, "matrix entries must be numbers");
            double v = x.get<double>();
            if (!std::isfinite(v)) fail(ErrorKind::ParseError, "matrix entries must be finite");
            m(i, k) = v;
        }
    }
    return m;
}

BasisDocument basis_document_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::ParseError, "document must be a JSON object");
    BasisDocument d;
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
        fail(ErrorKind::ParseError, "version must be 1");
    if (!j.contains("matrices") || !j["matrices"].is_array()) fail(ErrorKind::ParseError, "matrices missing");
    const json& ms = j["matrices"];
    if (ms.size() != 2 && ms.size() != 3) fail(ErrorKind::ParseError, "need exactly 2 or 3 matrices");
    for (const json& m : ms) d.matrices.push_back(mat4_from_json(m));
    if (j.contains("label")) {
        if (!j["label"].is_string()) fail(ErrorKind::ParseError, "label must be a string");
        d.label = j["label"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_array()) fail(ErrorKind::ParseError, "params must be an array");
        std::vector<double> p;
        for (const json& x : j["params"]) {
            if (!x.is_number()) fail(ErrorKind::ParseError, "params must be numbers");
            p.push_back(x.get<double>());
        }
        d.params = p;
    }
    return d;
}

BasisDocument parse_basis_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return basis_document_from_json(j);
}

json to_json(const BasisDocument& doc) {
    json j;
    j["version"] = doc.version;
    j["matrices"] = json::array();
    for (const Mat4& m : doc.matrices) j["matrices"].push_back(to_json(m));
    if (doc.label) j["label"] = *doc.label;
    if (doc.params) j["params"] = *doc.params;
    return j;
}

json to_json(const EigenProfile& p) {
    json j;
    j["shape"] = p.shape();
    j["draws"] = p.draws;
    j["clusters"] = json::array();
    for (const auto& c : p.clusters)
        j["clusters"].push_back({{"value", c.value}, {"multiplicity", c.multiplicity}, {"jordan", c.jordan}});
    return j;
}

EigenProfile eigen_profile_from_json(const json& j) {
    EigenProfile p;
    p.draws = j.at("draws").get<int>();
    for (const json& c : j.at("clusters"))
        p.clusters.push_back({c.at("value").get<double>(), c.at("multiplicity").get<int>(), c.at("jordan").get<std::vector<int>>()});
    return p;
}

json to_json(const StructureInvariants& s) {
    return {{"kernel_dim", s.kernel_dim}, {"image_dim", s.image_dim}, {"product_dim", s.product_dim}, {"phi_rank", s.phi_rank}};
}

StructureInvariants structure_from_json(const json& j) {
    return {j.at("kernel_dim").get<int>(), j.at("image_dim").get<int>(), j.at("product_dim").get<int>(),
            j.at("phi_rank").get<int>()};
}

json to_json(const ClosureSignature& c) {
    return {{"dims", c.dims}, {"histogram", c.histogram}, {"fixed_set_dim", c.fixed_set_dim}};
}

ClosureSignature closure_from_json(const json& j) {
    ClosureSignature c;
    c.dims = j.at("dims").get<std::vector<int>>();
    c.histogram = j.at("histogram").get<std::array<int, 4>>();
    c.fixed_set_dim = j.at("fixed_set_dim").get<int>();
    return c;
}

json to_json(const ClassificationReport& r) {
    json j;
    j["label"] = std::string(name(r.label));
    j["profile"] = to_json(r.profile);
    j["structure"] = to_json(r.structure);
    j["closure"] = to_json(r.closure);
    j["detII"] = r.detII ? json(*r.detII) : json(nullptr);
    j["triangularizer"] = to_json(r.triangularizer);
    return j;
}

ClassificationReport classification_report_from_json(const json& j) {
    ClassificationReport r;
    auto f = parse_family(j.at("label").get<std::string>());
    if (!f) fail(ErrorKind::ParseError, "unknown family label");
    r.label = *f;
    r.profile = eigen_profile_from_json(j.at("profile"));
    r.structure = structure_from_json(j.at("structure"));
    r.closure = closure_from_json(j.at("closure"));
    if (!j.at("detII").is_null()) r.detII = j.at("detII").get<double>();
    r.triangularizer = mat4_from_json(j.at("triangularizer"));
    return r;
}

json to_json(const ConvexityResult& c) {
    json j;
    j["verdict"] = std::string(to_string(c.verdict));
    j["dets"] = c.dets;
    j["skipped"] = c.skipped;
    if (c.witness) j["witness"] = std::vector<double>(c.witness->data(), c.witness->data() + 4);
    if (c.negative_witness)
        j["negative_witness"] = std::vector<double>(c.negative_witness->data(), c.negative_witness->data() + 4);
    return j;
}

json to_json(const CuspReport& r) {
    json j;
    j["is_cusp"] = r.is_cusp;
    j["label"] = r.label ? json(std::string(name(*r.label))) : json(nullptr);
    j["shape"] = r.shape;
    if (r.rst) j["rst"] = r.rst->v();
    if (r.s_prime) j["s_prime"] = *r.s_prime;
    j["convexity"] = to_json(r.convexity);
    j["centralizer_dim"] = r.centralizer_dim;
    j["ambient"] = r.ambient ? json(std::string(name(*r.ambient))) : json(nullptr);
    j["triangularizer"] = to_json(r.triangularizer);
    return j;
}

json to_json(const ConjugacyCertificate& c, const ConjugacyCheck& check) {
    json j;
    j["name"] = c.name;
    j["conjugator"] = to_json(c.conjugator);
    j["residual"] = check.max_residual;
    j["algebra_residual"] = check.algebra_residual;
    j["ok"] = check.ok;
    return j;
}

std::string dump(const json& j) { return j.dump(2); }

bool cusp_c_region_shaded(double r, double s) { return r * s * (1.0 + r + s) > 0.0; }

std::vector<RegionCell> cusp_c_region(int resolution, double extent) {
    if (resolution < 16) fail(ErrorKind::BadParams, "region: resolution must be at least 16");
    std::vector<RegionCell> cells;
    cells.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    double h = 2.0 * extent / resolution;
    for (int j = 0; j < resolution; ++j)
        for (int i = 0; i < resolution; ++i) {
            double r = -extent + (i + 0.5) * h, s = -extent + (j + 0.5) * h;
            cells.push_back({r, s, cusp_c_region_shaded(r, s)});
        }
    return cells;
}

void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells) {
    os << "r,s,convex\n";
    for (const auto& c : cells) os << c.r << ',' << c.s << ',' << (c.shaded ? 1 : 0) << '\n';
}

void write_region_svg(std::ostream& os, const std::vector<RegionCell>& cells, int resolution, double extent) {
    const int px = 600;
    double cell = static_cast<double>(px) / resolution;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px << "\" height=\"" << px << "\" viewBox=\"0 0 " << px
       << ' ' << px << "\">\n";
    os << "<rect width=\"" << px << "\" height=\"" << px << "\" fill=\"white\"/>\n";
    for (const auto& c : cells) {
        if (!c.shaded) continue;
        double x = (c.r + extent) / (2 * extent) * px - cell / 2;
        double y = (extent - c.s) / (2 * extent) * px - cell / 2;
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
           << "\" fill=\"#7a9cc6\"/>\n";
    }
    auto X = [&](double r) { return (r + extent) / (2 * extent) * px; };
    auto Y = [&](double s) { return (extent - s) / (2 * extent) * px; };
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << px << "\"/>\n";
    os << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << px << "\" y2=\"" << Y(0) << "\"/>\n";
    os << "<line x1=\"" << X(-extent) << "\" y1=\"" << Y(extent - 1) << "\" x2=\"" << X(extent) << "\" y2=\""
       << Y(-extent - 1) << "\"/>\n";
    os << "</g>\n</svg>\n";
}

}  // namespace cusp
