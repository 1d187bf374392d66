// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/sampler.hpp"
#include "psray/sdf.hpp"

#include <vector>

namespace psray {

// SDF values and rendering weights along one ray, points sorted by ray
// distance. Band tags partition foreground points into Near/Empty;
// background rays carry no tags.
struct RayEvaluation {
    std::vector<double> sdf_values;
    std::vector<double> weights;  // same length; trailing point has no forward difference
    std::vector<Band> bands;
    bool is_background = false;
};

struct LossParams {
    double lambda1 = 0.5;
    double lambda2 = 0.5;
    double epsilon = 1e-3;
    double beta = 10.0;
    bool inclusive_transmittance = false;
};

struct SurfaceLossReport {
    double near = 0.0;
    double empty = 0.0;
    double background = 0.0;
    double total = 0.0;
    std::size_t ray_count = 0;
};

// Per-interval opacity from consecutive SDF values (needs >= 2 points):
// alpha_i = max((Phi_s(S_i) - Phi_s(S_{i+1})) / Phi_s(S_i), 0), clamped to 1.
std::vector<double> compute_alphas(const std::vector<double>& sdf_values, double s);

// Rendering weights w_i = alpha_i * prod_{j<i} (1 - alpha_j); the product
// excludes the current sample so a fully opaque interval keeps its own
// weight and extinguishes everything behind it. inclusive_product switches
// to the literal self-occluding form for ablation.
std::vector<double> compute_weights(const std::vector<double>& alphas,
                                    bool inclusive_product = false);

/// Mean over rays of sum |S| * w over Near points; background rays count as 0.
double near_surface_loss(const std::vector<RayEvaluation>& rays);

/// Mean over rays of sum ((S - epsilon) * w)^2 over Empty points.
double empty_space_loss(const std::vector<RayEvaluation>& rays, double epsilon);

/// Mean over rays of sum e^{-beta |S|} * w over background-ray points only.
double background_loss(const std::vector<RayEvaluation>& rays, double beta);

/// Combined report: total = lambda1 * near + lambda2 * (empty + background).
SurfaceLossReport total_surface_loss(const std::vector<RayEvaluation>& rays,
                                     const LossParams& params);

// Builds a RayEvaluation from a sampled ray: SDF at each point, weights via
// compute_alphas/compute_weights over distance-sorted points (the last
// weight is zero-padded so lengths match).
RayEvaluation evaluate_ray(const RaySample& ray, const SdfFn& sdf, double s,
                           const LossParams& params);

std::vector<RayEvaluation> evaluate_rays(const std::vector<RaySample>& rays, const SdfFn& sdf,
                                         double s, const LossParams& params);

}  // namespace psray
