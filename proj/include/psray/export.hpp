// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/image_grid.hpp"
#include "psray/losses.hpp"
#include "psray/sampler.hpp"

#include <string>
#include <vector>

namespace psray {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// Ray batch CSV, one row per ray:
// camera_id,source,u,v,lambda,px,py,ox,oy,oz,dx,dy,dz
void write_samples_csv(const std::string& path, const std::vector<RaySample>& rays);

/// Ray point CSV keyed by ray index: ray_index,t,band
void write_ray_points_csv(const std::string& path, const std::vector<RaySample>& rays);

/// Full grid CSV: u_idx,v_idx,lambda_idx,p (one row per cell, viewdep values).
void write_grid_csv(const std::string& path, const CameraGrid& grid);

// Grayscale heatmap of the lambda-summed (u, v) marginal, linearly scaled
// to the marginal's maximum; row 0 is the minimum-v row.
void write_heatmap_png(const std::string& path, const CameraGrid& grid);

/// Loss report JSON: {near, empty, background, total, rays, params}.
void write_loss_report_json(const std::string& path, const SurfaceLossReport& report,
                            const LossParams& params, double surf_weight);
std::string loss_report_to_json(const SurfaceLossReport& report, const LossParams& params,
                                double surf_weight);

}  // namespace psray
