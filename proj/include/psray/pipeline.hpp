// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/config.hpp"
#include "psray/geometry.hpp"
#include "psray/grid_io.hpp"
#include "psray/image_grid.hpp"
#include "psray/sampler.hpp"
#include "psray/scene_grid.hpp"
#include "psray/scene_io.hpp"

#include <string>
#include <vector>

namespace psray {

/// Resolved inputs for one run: boundary, SDF and the camera rig.
struct ScenePipeline {
    SceneBoundary boundary;
    SdfFn sdf;  // analytic scene, voxel override, or the boundary sphere itself
    std::vector<Camera> cameras;
};

// Loads scene/rig per the config. With no scene file (or an empty shape
// list) the SDF falls back to the boundary sphere, which is the sphere
// initialization used before any external field exists. A non-empty
// sdf_grid_path overrides the SDF with a voxel field.
ScenePipeline load_pipeline(const RunConfig& config, const std::string& sdf_grid_path = "");

SceneGrid build_scene(const ScenePipeline& pipeline, const RunConfig& config, int threads = 1);

/// Interpolation + view dependency + normalization for one camera.
CameraGrid build_camera_grid(const SceneGrid& scene, const Camera& cam, int camera_id,
                             const SceneBoundary& boundary, const RunConfig& config,
                             int threads = 1);

/// All camera grids; cameras are distributed across threads.
std::vector<CameraGrid> build_all_camera_grids(const SceneGrid& scene, const ScenePipeline& pipeline,
                                               const RunConfig& config, int threads = 1);

MixSchedule schedule_from_config(const RunConfig& config);

GridDump scene_grid_to_dump(const SceneGrid& grid);
GridDump camera_grid_to_dump(const CameraGrid& grid);
/// Rebuilds a sampling-ready grid from a dump (renormalized after the f32 cast).
CameraGrid camera_grid_from_dump(const GridDump& dump, int camera_id);

}  // namespace psray
