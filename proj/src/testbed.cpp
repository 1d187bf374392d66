// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/testbed.hpp"

#include "psray/rng.hpp"
#include "psray/scene_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace psray {

std::vector<double> brute_force_camera_pdf(const SdfFn& sdf, const Camera& cam,
                                           const SceneBoundary& boundary,
                                           const CameraBounds& bounds, const Vec3i& resolution,
                                           std::size_t n_mc, double s, uint64_t seed) {
    Vec3 lo, hi;
    boundary.enclosing_box(lo, hi);
    const Vec3 extent = hi - lo;
    const double volume = extent.prod();
    const double point_weight = volume / static_cast<double>(n_mc);

    const int ru = resolution.x(), rv = resolution.y(), rl = resolution.z();
    std::vector<double> grid(static_cast<std::size_t>(ru) * rv * rl, 0.0);

    const Mat3 rot_t = cam.rotation.transpose();
    const double du = bounds.u_range.length() / ru;
    const double dv = bounds.v_range.length() / rv;
    const double dl = bounds.lambda_range.length() / rl;

    Pcg32 rng(seed);
    for (std::size_t i = 0; i < n_mc; ++i) {
        const Vec3 x = lo + Vec3(rng.next_double() * extent.x(), rng.next_double() * extent.y(),
                                 rng.next_double() * extent.z());
        const Vec3 xhat = rot_t * (x - cam.center);
        const double eta = xhat.z();
        if (eta <= 0.0) continue;
        const double u = xhat.x() / eta;
        const double v = xhat.y() / eta;
        const int iu = static_cast<int>(std::floor((u - bounds.u_range.lo) / du));
        const int iv = static_cast<int>(std::floor((v - bounds.v_range.lo) / dv));
        const int il = static_cast<int>(std::floor((eta - bounds.lambda_range.lo) / dl));
        if (iu < 0 || iu >= ru || iv < 0 || iv >= rv || il < 0 || il >= rl) continue;
        const double density = logistic_density(sdf(x), s);
        grid[(static_cast<std::size_t>(il) * rv + iv) * ru + iu] +=
            density * point_weight / (eta * eta);
    }
    return grid;
}

TwoWallScene two_wall_scene() {
    TwoWallScene scene;
    scene.front_depth = 2.0;
    scene.back_depth = 3.0;
    scene.wall_thickness = 0.25;
    scene.s = 30.0;
    scene.sdf = AnalyticSdf::union_of({
        AnalyticSdf::wall(2, scene.front_depth, scene.wall_thickness),
        AnalyticSdf::wall(2, scene.back_depth, scene.wall_thickness),
    });
    scene.boundary = SceneBoundary::sphere(4.0);

    Camera cam;
    cam.rotation = Mat3::Identity();
    cam.center = Vec3::Zero();
    cam.width = 64;
    cam.height = 64;
    // narrow field of view so single columns carry modest optical depth
    cam.fx = cam.fy = 128.0;
    cam.cx = cam.cy = 32.0;
    scene.camera = cam;
    return scene;
}

namespace {

void normalize_mass(std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) total += v;
    if (total <= 0.0) throw std::invalid_argument("cannot normalize zero-mass vector");
    for (double& v : values) v /= total;
}

}  // namespace

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    return 0.5 * l1_normalized(a, b);
}

double l1_normalized(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    std::vector<double> pa = a, pb = b;
    normalize_mass(pa);
    normalize_mass(pb);
    double l1 = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) l1 += std::abs(pa[i] - pb[i]);
    return l1;
}

}  // namespace psray
