#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusp/catalog.hpp"
#include "cusp/mat4.hpp"

namespace cusp {

/// Throws Singular when g is numerically singular.
ProjPoint act(const Mat4& g, const ProjPoint& p);

struct SamplingConfig {
    int points_per_axis = 5;
    double lo = -1.0;
    double hi = 1.0;
    double rank_tol = tol::rank;
};

struct OrbitSample {
    ProjPoint base;
    std::vector<std::vector<double>> coords;
    std::vector<ProjPoint> images;
};

OrbitSample sample_orbit(const GroupChart& chart, const ProjPoint& p, const SamplingConfig& cfg = {});

/// projective_rank of the sampled orbit minus one.
int orbit_closure_dim(const GroupChart& chart, const ProjPoint& p, const SamplingConfig& cfg = {});

struct BatteryPoint {
    std::string name;
    Vec4 point;
};

/** @brief Coordinate points, pair and triple sums, [1:1:1:1], and three seeded points. */
std::vector<BatteryPoint> standard_battery(std::uint64_t seed = default_seed);

struct ClosureSignature {
    std::vector<int> dims;            // per battery point
    std::array<int, 4> histogram{};   // count of dims 0..3
    int fixed_set_dim = -1;           // -1 when there is no fixed point

    bool operator==(const ClosureSignature&) const = default;
};

/// Largest projective dimension of a common eigenspace, or -1.
int fixed_set_dim(std::span<const Mat4> gens, std::uint64_t seed = default_seed);

/** @brief Closure dims at the battery (optionally moved by M) plus the fixed-set dimension. */
ClosureSignature closure_signature(const GroupChart& chart, const std::optional<Mat4>& battery_map = std::nullopt,
                                   std::uint64_t seed = default_seed, const SamplingConfig& cfg = {});

/// Tabulated orbit-closure data for one family: subspaces given as coordinate bitmasks.
struct ClosureRow {
    Family family;
    struct Entry {
        int dim;
        unsigned mask;  // bit i set when e_{i+1} spans the subspace
    };
    std::vector<Entry> entries;
    int generic_dim;
};

const std::vector<ClosureRow>& closure_table();
const ClosureRow& closure_row(Family f);

/// Smallest tabulated dimension over the subspaces containing p.
int tabulated_closure_dim(const ClosureRow& row, const Vec4& p);

}  // namespace cusp
