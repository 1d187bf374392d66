// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/geometry.hpp"
#include "psray/image_grid.hpp"
#include "psray/sdf.hpp"

#include <cstdint>
#include <vector>

namespace psray {

// Monte Carlo estimate of the camera-space density: n_mc points uniform in
// the boundary's enclosing box, each weighted phi_s(S(x)) * eta^-2 *
// V / n_mc and binned by f(x). Deliberately shares no projection or binning
// helpers with interpolate_camera_grid; it is the oracle for that path.
std::vector<double> brute_force_camera_pdf(const SdfFn& sdf, const Camera& cam,
                                           const SceneBoundary& boundary,
                                           const CameraBounds& bounds, const Vec3i& resolution,
                                           std::size_t n_mc, double s, uint64_t seed);

// Two parallel wall slabs perpendicular to the camera axis at known depths;
// the fixture for occlusion-awareness checks. The camera sits at the origin
// looking down +z, inside the boundary sphere.
struct TwoWallScene {
    AnalyticSdf sdf;
    Camera camera;
    SceneBoundary boundary;
    double front_depth = 2.0;
    double back_depth = 3.0;
    double wall_thickness = 0.25;
    double s = 30.0;
};

TwoWallScene two_wall_scene();

/// Half L1 distance between two mass vectors, each normalized to unit sum.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

/// L1 distance between two mass vectors, each normalized to unit sum.
double l1_normalized(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace psray
