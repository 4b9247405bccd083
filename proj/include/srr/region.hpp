#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "srr/closed_form.hpp"
#include "srr/greedy.hpp"
#include "srr/lp_oracle.hpp"
#include "srr/storage_model.hpp"

namespace srr {

enum class BoundarySource { lp, closed_form, greedy };

struct BoundarySample {
    std::vector<Rat> lambda_hat;
    Rat L;
    BoundarySource source = BoundarySource::lp;
    std::optional<ThreeFileCase> case_label;
};

// normal . lambda <= offset
struct Halfspace {
    std::vector<Rat> normal;
    Rat offset;
};

struct RegionBoundary {
    int K = 0;
    std::vector<BoundarySample> samples;
    std::optional<std::vector<Halfspace>> halfspaces;
    std::optional<std::vector<std::vector<Rat>>> vertices;
};

// Maps every grid point of [0, N mu]^(K-1) (multiples of grid_step) to its
// boundary value via the chosen source; points outside the region (or
// outside a closed form's domain) are simply absent. The closed-form source
// supports all-coded systems (any K) and K = 3 systems; it throws
// std::invalid_argument elsewhere.
RegionBoundary sample_boundary(const StorageSystem& system, const Rat& grid_step,
                               BoundarySource source,
                               const LpMode& mode = LpMode::rational());

// Exact half-space/vertex description of the all-coded region: the simplex
// sum(lambda) <= (C/K) mu when C > K-1, the origin alone otherwise.
RegionBoundary all_coded_polytope(int C, int K, const Rat& mu);

struct CrossValidationPoint {
    Rat l1, l2;
    // nullopt = the source reports the point as outside the region
    std::optional<Rat> lp, closed, greedy;
    std::optional<ThreeFileCase> case_label;
};

struct CrossValidationReport {
    long points_checked = 0;
    Rat max_abs_discrepancy;
    std::vector<CrossValidationPoint> mismatches;

    bool all_agree() const { return mismatches.empty(); }
};

// Compares LP, closed-form, and greedy values at every grid point of a
// K = 3 system satisfying the closed form's hypotheses (exact arithmetic).
CrossValidationReport cross_validate(const StorageSystem& system,
                                     const Rat& grid_step);

enum class ExportFormat { csv, json, svg };

// csv: one row per sample; json: the full boundary description; svg: filled
// polygon for K = 2, fixed-lambda_1 slices for K = 3. Floating point is
// rendered with 12 significant digits. Throws std::invalid_argument for svg
// with K > 3 and std::runtime_error on unwritable paths.
void export_region(const RegionBoundary& region, ExportFormat format,
                   const std::filesystem::path& path);

const char* to_string(BoundarySource source);

}  // namespace srr
