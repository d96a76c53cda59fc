#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "cusp/catalog.hpp"
#include "cusp/mat4.hpp"

namespace cusp {

enum class Verdict { Convex, Flat, Indefinite };
std::string_view to_string(Verdict v);

/** @brief Orbit of `base` under a 2-dim chart, seen in the affine patch x_d != 0 (d = 3 by default). */
class OrbitSurface {
public:
    OrbitSurface(GroupChart chart, const Vec4& base, int dehom_index = 3);

    const GroupChart& chart() const { return chart_; }
    const Vec4& base() const { return base_; }
    int dehom_index() const { return dehom_; }

    Vec3 dehomogenize(const Vec4& h) const;
    Vec3 at(double a, double b) const;

private:
    GroupChart chart_;
    Vec4 base_;
    int dehom_;
};

struct SurfaceJet {
    Vec3 f, fa, fb, faa, fab, fbb;
};

/// Derivatives at (0,0) from the Lie algebra: d/du_i = K_i p, d2/du_i du_j = K_i K_j p.
SurfaceJet orbit_jet(const OrbitSurface& s);

/// Central differences at h and h/2 combined by Richardson extrapolation.
SurfaceJet fd_jet(const std::function<Vec3(double, double)>& f, double h = 1e-4, double* error_estimate = nullptr);

/** @brief det(g^-1 II) for the jet. Throws DegenerateTangent when the tangents are dependent. */
double second_form_det(const SurfaceJet& jet);
double second_form_det(const OrbitSurface& s);

struct SecondFormResult {
    double det_numeric = 0.0;
    double det_fd = 0.0;          // finite-difference estimate
    double fd_error = 0.0;        // Richardson error estimate of det_fd
    std::optional<double> det_closed;
    Verdict verdict = Verdict::Flat;
};

SecondFormResult evaluate_second_form(const OrbitSurface& s, std::optional<double> closed = std::nullopt,
                                      double tol_sign = tol::sign);

/** @brief Tabulated det II expression; p = (x0, y0, z0). C takes rst, the others (r, s). */
double closed_form_detII(Family f, const FamilyParams& params, const Vec3& p);

struct ConvexityResult {
    Verdict verdict = Verdict::Flat;
    std::optional<Vec4> witness;           // first point with det > tol
    std::optional<Vec4> negative_witness;  // first point with det < -tol
    std::vector<double> dets;              // per evaluated base point
    int skipped = 0;                       // degenerate base points
};

/// Affine base points [x:y:z:1] with coordinates in [0.2, 2], starting with [1:1:1:1].
std::vector<Vec4> curvature_battery(std::uint64_t seed = default_seed, int count = 8);

ConvexityResult is_convex_orbit(const AlgebraBasis& basis2d, std::uint64_t seed = default_seed,
                                double tol_sign = tol::sign);

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> quads;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> curvature;  // per vertex
    Vec3 origin;                    // vertex at chart coordinates (0,0)
    int height_axis = 2;            // vertical component of the vertices
};

/// Height of the CuspE leaf with index k at the grid origin.
double cusp_e_leaf_height(double r, double s, double k);

/**
 * @brief Leaf of the cusp foliation through the base point for index k.
 *
 * CuspE uses the patch x3 != 0 with vertices (x1, x2, x4)/x3 and height axis 1;
 * the other cusps use x4 != 0.
 */
Mesh horosphere_sample(Family cusp, const FamilyParams& params, double k, int grid = 9, double extent = 1.0);

void write_obj(std::ostream& os, const Mesh& m);
void write_csv(std::ostream& os, const Mesh& m);

}  // namespace cusp
