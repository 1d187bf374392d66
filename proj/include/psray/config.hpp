// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/losses.hpp"
#include "psray/math.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace psray {

// Run configuration, loaded from a TOML file. Every field has a default,
// so an empty file is a valid config; unknown keys are rejected.
struct RunConfig {
    std::string scene_path;    // empty: boundary sphere only (sphere initialization)
    std::string cameras_path;  // overrides the rig referenced by the scene file
    double boundary_radius = 1.0;  // boundary when no scene file is given

    double s = 50.0;
    int partition_factor = 2;
    Vec3i scene_resolution = Vec3i(128, 128, 128);
    Vec3i camera_resolution = Vec3i(64, 64, 128);

    long total_steps = 10000;
    long refresh_interval = 2500;
    uint64_t seed = 42;

    bool view_dependency = true;
    bool inclusive_transmittance = false;
    double density_scale = 1.0;
    int ray_points = 32;

    LossParams loss;
    double surf_weight = 500.0;
    std::vector<double> uniform_fractions = {0.20, 0.40, 0.60, 0.80};

    /// Throws ParseError when an invariant is violated.
    void validate() const;
};

// Parses the documented subset of TOML: comments, [section] headers, and
// key = string | number | boolean | array-of-numbers.
RunConfig load_run_config(const std::string& path);

}  // namespace psray
