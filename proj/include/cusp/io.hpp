#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cusp/classify.hpp"
#include "cusp/normalform.hpp"

namespace cusp {

using json = nlohmann::ordered_json;

/** @brief Input document. Matrices are 4x4 row-major arrays of arrays. */
struct BasisDocument {
    int version = 1;
    std::vector<Mat4> matrices;
    std::optional<std::string> label;
    std::optional<std::vector<double>> params;
};

/// Throws ParseError on malformed JSON or schema violations.
BasisDocument parse_basis_document(const std::string& text);
BasisDocument basis_document_from_json(const json& j);
json to_json(const BasisDocument& doc);

json to_json(const Mat4& m);
Mat4 mat4_from_json(const json& j);

json to_json(const EigenProfile& p);
EigenProfile eigen_profile_from_json(const json& j);
json to_json(const StructureInvariants& s);
StructureInvariants structure_from_json(const json& j);
json to_json(const ClosureSignature& c);
ClosureSignature closure_from_json(const json& j);
json to_json(const ClassificationReport& r);
ClassificationReport classification_report_from_json(const json& j);
json to_json(const ConvexityResult& c);
json to_json(const CuspReport& r);
json to_json(const ConjugacyCertificate& c, const ConjugacyCheck& check);

/// Doubles formatted with 17 significant digits, so output is byte-stable.
std::string dump(const json& j);

struct RegionCell {
    double r = 0.0, s = 0.0;
    bool shaded = false;
};

/// Cell centres of a resolution x resolution grid over [-extent, extent]^2 in the chart t = 1.
std::vector<RegionCell> cusp_c_region(int resolution, double extent = 3.0);
bool cusp_c_region_shaded(double r, double s);
void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells);
void write_region_svg(std::ostream& os, const std::vector<RegionCell>& cells, int resolution, double extent = 3.0);

}  // namespace cusp
