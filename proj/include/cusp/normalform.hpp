#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "cusp/catalog.hpp"
#include "cusp/mat4.hpp"

namespace cusp {

/** @brief Monomial matrix M with M e_i = sign[i] e_{perm[i]} (0-based perm). */
struct SignedPermutation {
    std::array<int, 4> perm{0, 1, 2, 3};
    std::array<int, 4> sign{1, 1, 1, 1};

    Mat4 matrix() const;
    bool operator==(const SignedPermutation&) const = default;
};

struct ConjugacyCertificate {
    std::string name;
    Mat4 conjugator;
    GroupChart source;
    GroupChart target;
};

/// Identity certificate on a chart.
ConjugacyCertificate identity_certificate(const GroupChart& chart);

struct CNormalForm {
    ProjTriple input;
    ProjTriple canonical;               // unit norm
    std::array<double, 3> display;      // scaled so the last entry is 1
    bool negated = false;               // alpha was multiplied by -1
    SignedPermutation permutation;
    ConjugacyCertificate certificate;
};

/** @brief Sort-after-sign-fix reduction to r >= s >= t > 0. Throws NotConvex. */
CNormalForm normalize_C(const ProjTriple& rst);

struct ENormalForm {
    double r = 1.0, s = 0.0;
    double s_prime = 0.0;
    Mat4 Q = Mat4::Identity();
    bool flipped = false;               // P applied
    ConjugacyCertificate certificate = identity_certificate(cusp_n_chart());
};

/// E(r,s) -> E(1, s') with 0 <= s' < 1/2. Throws NotConvex.
ENormalForm normalize_E(double r, double s);

struct FNormalForm {
    double r = 1.0, s = 0.0;
    Mat4 R = Mat4::Identity();
    Mat4 S = Mat4::Identity();
    ConjugacyCertificate certificate = identity_certificate(cusp_n_chart());   // R * S
};

/// F(r,s) -> F(1,0). Throws NotConvex for r <= 0.
FNormalForm normalize_F(double r, double s);

Mat4 matrix_P();                     // swaps e1 and e4
Mat4 matrix_Q(double lambda);        // diag(1, lambda, 1, 1)
Mat4 matrix_R(double r);
Mat4 matrix_S(double s);

ConjugacyCertificate certificate_P(double r, double s);   // E(r,s) -> E(r,-s)
ConjugacyCertificate certificate_Q(double r, double s);   // E(r,s) -> E(1,s/r)
ConjugacyCertificate certificate_R(double r);             // F(r,0) -> F(1,0)
ConjugacyCertificate certificate_S(double r, double s);   // F(r,s) -> F(r,0)

/// Type 9 with [0:0:1:t] to N6: shear removing the -t E14 term, then a permutation.
ConjugacyCertificate type9_shear_certificate(double t);

/** @brief Type 9 [x:y:z:t] to N6 when the functional [[y,z],[x,t]] has rank one; nullopt otherwise. */
std::optional<ConjugacyCertificate> type9_certificate(double x, double y, double z, double t);

struct ConjugacyCheck {
    bool ok = false;
    double max_residual = 0.0;
    double algebra_residual = 0.0;
    Eigen::MatrixXd coordinate_map;   // u' = L u
};

/** @brief Samples M g(u) M^-1 against target(L u). Throws Singular. */
ConjugacyCheck verify_conjugacy(const ConjugacyCertificate& cert, int n_samples = 50,
                                std::uint64_t seed = default_seed, double tol = 1e-10);

}  // namespace cusp
