// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/geometry.hpp"
#include "psray/math.hpp"
#include "psray/scene_grid.hpp"

#include <cstddef>
#include <vector>

namespace psray {

// Per-camera grid over (u, v, lambda). `raw` holds the projected scene
// density p(u); `viewdep` holds the transmittance-weighted p~(u) used for
// sampling. Layout is row-major with u fastest, so one (u, v) column is a
// strided walk over lambda.
struct CameraGrid {
    int camera_id = 0;
    CameraBounds bounds;
    int ru = 1, rv = 1, rl = 1;
    std::vector<double> raw;
    std::vector<double> viewdep;
    bool normalized = false;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(ru) * rv * rl;
    }
    std::size_t index(int iu, int iv, int il) const {
        return (static_cast<std::size_t>(il) * rv + iv) * ru + iu;
    }
    double raw_total() const;
    double viewdep_total() const;
    /// True when no scene mass landed in the camera frustum.
    bool empty() const { return raw_total() == 0.0; }

    /// Continuous coordinates of a cell center.
    ImageSpacePoint cell_center_coords(int iu, int iv, int il) const {
        return {cell_center(iu, bounds.u_range.lo, bounds.u_range.hi, ru),
                cell_center(iv, bounds.v_range.lo, bounds.v_range.hi, rv),
                cell_center(il, bounds.lambda_range.lo, bounds.lambda_range.hi, rl)};
    }
};

// Builds p(u) by projecting every partitioned scene subcell into the grid
// and accumulating eta^-2-weighted mass, where eta is the projected z-depth
// (Riemann-sum approximation of the change of variables). Subcells behind
// the camera or outside the bounds are discarded. The reduction runs over a
// fixed number of parent blocks, so the result is bit-identical for any
// thread count.
CameraGrid interpolate_camera_grid(const SceneGrid& scene, const Camera& cam,
                                   const CameraBounds& bounds, const Vec3i& resolution, int F,
                                   int threads = 1);

// Fills viewdep with raw weighted by per-column transmittance:
// viewdep[i] = raw[i] * exp(-density_scale * sum_{k<i} raw[k]) with cells
// ordered by increasing lambda. The prefix excludes the current cell;
// inclusive_prefix switches to the literal self-occluding form for
// ablation. density_scale converts grid probability to optical density.
void apply_view_dependency(CameraGrid& grid, double density_scale = 1.0,
                           bool inclusive_prefix = false);

/// Ablation path: viewdep becomes a copy of raw (no occlusion weighting).
void disable_view_dependency(CameraGrid& grid);

/// Scales viewdep to sum to 1; throws DegenerateDistributionError on zero mass.
void normalize(CameraGrid& grid);

/// Lambda-summed viewdep marginal, rv x ru row-major (row = v index).
std::vector<double> uv_marginal(const CameraGrid& grid);

}  // namespace psray
