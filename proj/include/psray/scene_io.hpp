// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/geometry.hpp"
#include "psray/sdf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psray {

// Camera rig: a JSON array of cameras, each with `rotation` (9 numbers,
// row-major; world-to-camera is x_cam = rotation^T (x - center)), `center`
// (3 numbers), `fx`, `fy`, `cx`, `cy`, `width`, `height`. Every camera is
// validated on load.
std::vector<Camera> load_camera_rig(const std::string& path);

/// Scene description: boundary, analytic shape list and a camera rig path.
struct SceneDescription {
    SceneBoundary boundary;
    std::optional<AnalyticSdf> sdf;  // absent when the shape list is empty
    std::string camera_rig_path;     // resolved relative to the scene file; may be empty
};

SceneDescription load_scene(const std::string& path);

}  // namespace psray
