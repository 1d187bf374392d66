// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/pipeline.hpp"

#include "psray/errors.hpp"
#include "psray/parallel.hpp"

#include <utility>

namespace psray {

ScenePipeline load_pipeline(const RunConfig& config, const std::string& sdf_grid_path) {
    ScenePipeline pipeline;
    std::string rig_path = config.cameras_path;

    if (!config.scene_path.empty()) {
        SceneDescription scene = load_scene(config.scene_path);
        pipeline.boundary = scene.boundary;
        if (scene.sdf)
            pipeline.sdf = scene.sdf->as_fn();
        if (rig_path.empty()) rig_path = scene.camera_rig_path;
    } else {
        pipeline.boundary = SceneBoundary::sphere(config.boundary_radius);
    }

    if (!pipeline.sdf) {
        // sphere initialization: the boundary itself is the first surface guess
        const SceneBoundary boundary = pipeline.boundary;
        if (boundary.kind == SceneBoundary::Kind::Sphere) {
            pipeline.sdf = AnalyticSdf::sphere(Vec3::Zero(), boundary.radius).as_fn();
        } else {
            const Vec3 center = 0.5 * (boundary.box_min + boundary.box_max);
            const Vec3 half = 0.5 * (boundary.box_max - boundary.box_min);
            pipeline.sdf = AnalyticSdf::box(center, half).as_fn();
        }
    }
    if (!sdf_grid_path.empty()) pipeline.sdf = VoxelSdf::load(sdf_grid_path).as_fn();

    if (rig_path.empty()) throw ParseError("no camera rig: set `cameras` in the config or scene file");
    pipeline.cameras = load_camera_rig(rig_path);
    return pipeline;
}

SceneGrid build_scene(const ScenePipeline& pipeline, const RunConfig& config, int threads) {
    return build_scene_grid(pipeline.sdf, pipeline.boundary, config.scene_resolution, config.s,
                            threads);
}

CameraGrid build_camera_grid(const SceneGrid& scene, const Camera& cam, int camera_id,
                             const SceneBoundary& boundary, const RunConfig& config, int threads) {
    CameraBounds bounds = compute_bounds(cam, boundary);
    CameraGrid grid = interpolate_camera_grid(scene, cam, bounds, config.camera_resolution,
                                              config.partition_factor, threads);
    grid.camera_id = camera_id;
    if (config.view_dependency)
        apply_view_dependency(grid, config.density_scale, config.inclusive_transmittance);
    else
        disable_view_dependency(grid);
    normalize(grid);
    return grid;
}

std::vector<CameraGrid> build_all_camera_grids(const SceneGrid& scene, const ScenePipeline& pipeline,
                                               const RunConfig& config, int threads) {
    std::vector<CameraGrid> grids(pipeline.cameras.size());
    parallel_for(pipeline.cameras.size(), threads, [&](std::size_t i) {
        grids[i] = build_camera_grid(scene, pipeline.cameras[i], static_cast<int>(i),
                                     pipeline.boundary, config, 1);
    });
    return grids;
}

MixSchedule schedule_from_config(const RunConfig& config) {
    MixSchedule schedule;
    schedule.phase_fractions = config.uniform_fractions;
    schedule.total_steps = config.total_steps;
    schedule.validate();
    return schedule;
}

GridDump scene_grid_to_dump(const SceneGrid& grid) {
    GridDump dump;
    dump.kind = GridKind::Scene;
    dump.dims = grid.resolution;
    dump.bounds_lo = grid.bounds_lo;
    dump.bounds_hi = grid.bounds_hi;
    dump.payload.reserve(grid.cell_prob.size());
    for (double v : grid.cell_prob) dump.payload.push_back(static_cast<float>(v));
    return dump;
}

GridDump camera_grid_to_dump(const CameraGrid& grid) {
    GridDump dump;
    dump.kind = GridKind::Camera;
    dump.dims = Vec3i(grid.ru, grid.rv, grid.rl);
    dump.bounds_lo = Vec3(grid.bounds.u_range.lo, grid.bounds.v_range.lo, grid.bounds.lambda_range.lo);
    dump.bounds_hi = Vec3(grid.bounds.u_range.hi, grid.bounds.v_range.hi, grid.bounds.lambda_range.hi);
    dump.payload.reserve(grid.viewdep.size());
    for (double v : grid.viewdep) dump.payload.push_back(static_cast<float>(v));
    return dump;
}

CameraGrid camera_grid_from_dump(const GridDump& dump, int camera_id) {
    if (dump.kind != GridKind::Camera) throw ParseError("expected a camera-kind grid dump");
    CameraGrid grid;
    grid.camera_id = camera_id;
    grid.ru = dump.dims.x();
    grid.rv = dump.dims.y();
    grid.rl = dump.dims.z();
    grid.bounds.u_range = {dump.bounds_lo.x(), dump.bounds_hi.x()};
    grid.bounds.v_range = {dump.bounds_lo.y(), dump.bounds_hi.y()};
    grid.bounds.lambda_range = {dump.bounds_lo.z(), dump.bounds_hi.z()};
    grid.raw.assign(dump.payload.begin(), dump.payload.end());
    grid.viewdep = grid.raw;
    normalize(grid);
    return grid;
}

}  // namespace psray
