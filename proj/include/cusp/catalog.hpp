#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cusp/mat4.hpp"

namespace cusp {

enum class Family {
    C, E1, F0, F1, F2, F3,
    N1, N2, N3, N4, N4p, N5, N6, N7, N8,
    CuspC, CuspE, CuspF, CuspN,
};

std::string_view name(Family f);
std::optional<Family> parse_family(std::string_view s);
bool is_cusp(Family f);

/// The fifteen 3-dimensional families, in table order.
std::span<const Family> catalog_families();
std::span<const Family> cusp_families();

/** @brief Nonzero real triple up to scale; stored with unit norm and first nonzero entry positive. */
class ProjTriple {
public:
    ProjTriple(double r, double s, double t);
    const std::array<double, 3>& v() const { return v_; }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    bool approx_equal(const ProjTriple& o, double tol = 1e-9) const;

private:
    std::array<double, 3> v_;
};

struct FamilyParams {
    std::optional<ProjTriple> rst;                 // C-type planes
    std::optional<std::array<double, 2>> rs;       // E and F type parameters
};

/** @brief Coordinates -> group element, with an optional closed form. */
class GroupChart {
public:
    using ClosedForm = std::function<Mat4(std::span<const double>)>;

    GroupChart(std::optional<Family> label, FamilyParams params, std::vector<Mat4> gens, ClosedForm closed = {});

    const std::optional<Family>& label() const { return label_; }
    const FamilyParams& params() const { return params_; }
    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Mat4>& generators() const { return gens_; }
    bool has_closed_form() const { return static_cast<bool>(closed_); }

    Mat4 log_element(std::span<const double> coords) const;
    /// Closed form when available, otherwise the exponential of log_element.
    Mat4 element(std::span<const double> coords) const;
    Mat4 element_via_exp(std::span<const double> coords) const;

    /// Chart of M G M^-1 in the same coordinates.
    GroupChart conjugated(const Mat4& M) const;

private:
    std::optional<Family> label_;
    FamilyParams params_;
    std::vector<Mat4> gens_;
    ClosedForm closed_;
};

Mat4 group_element(const GroupChart& chart, std::span<const double> coords);

/** @brief Lie algebra of a family. Cusp families need params (rst for C, (r,s) for E). */
AlgebraBasis algebra_basis(Family f, const FamilyParams& params = {});

/// Chart of the family in its standard coordinates (a, b, c) or (a, b) for cusps.
GroupChart family_chart(Family f, const FamilyParams& params = {});

/// Linear functional on algebra coordinates cutting out the plane [r:s:t].
Eigen::RowVector3d plane_functional(Family f, const ProjTriple& plane);

/** @brief 2-dim subalgebra {r a + s b + t c = 0}; for C the plane is {r x1 + s x2 + t x3 - (r+s+t) x4 = 0}. */
AlgebraBasis plane_subalgebra(Family f, const FamilyParams& params, const ProjTriple& plane);
GroupChart plane_chart(Family f, const ProjTriple& plane);

/// The plane [r:s:-1] with (a, b) as coordinates and c = r a + s b.
GroupChart rs_plane_chart(Family f, double r, double s);

GroupChart cusp_c_chart(const ProjTriple& rst);
GroupChart cusp_e_chart(double r, double s);
GroupChart cusp_f_chart(double r, double s);
GroupChart cusp_n_chart();

/** @brief Haettel-type abelian subalgebra with the family its parameter regime is asserted to give. */
struct HaettelAlgebra {
    int type_id = 0;
    std::vector<double> params;
    std::string regime;
    AlgebraBasis basis;
    Family asserted;
};

/**
 * Types 1..10. Type 2 takes a variant index 0..5 (alpha, beta, gamma, alpha+beta,
 * beta+gamma, alpha+beta+gamma). Types 3 and 5 take (variant, x, y) with variant 0
 * for the alpha-beta form and 1 for the beta-gamma form.
 */
HaettelAlgebra haettel_type_constructor(int type_id, std::span<const double> params);

struct HaettelRegime {
    int type_id;
    std::vector<double> params;
};

/// One representative per parameter regime, covering every stated case.
std::vector<HaettelRegime> haettel_regimes();

}  // namespace cusp
