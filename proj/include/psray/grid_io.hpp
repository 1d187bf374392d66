// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/math.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace psray {

enum class GridKind : uint8_t { Scene = 0, Camera = 1 };

// PSGD grid dump, little-endian:
//   magic "PSGD" | version u32 = 1 | kind u8 | dims 3 x u32 |
//   bounds 6 x f64 (lo.xyz then hi.xyz; u/v/lambda for camera grids) |
//   payload f32, row-major with the first dimension fastest.
struct GridDump {
    GridKind kind = GridKind::Scene;
    Vec3i dims = Vec3i::Zero();
    Vec3 bounds_lo = Vec3::Zero();
    Vec3 bounds_hi = Vec3::Zero();
    std::vector<float> payload;
};

void write_grid_dump(const std::string& path, const GridDump& dump);
GridDump read_grid_dump(const std::string& path);

}  // namespace psray
