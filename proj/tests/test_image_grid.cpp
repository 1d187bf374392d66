// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/image_grid.hpp"

#include "psray/errors.hpp"
#include "psray/rng.hpp"
#include "psray/testbed.hpp"

#include <doctest.h>

#include <cmath>

#include "../tests/test_util.hpp"

using namespace psray;
using psray::test::KahanSum;

namespace {

Camera origin_camera() {
    Camera cam;
    cam.fx = cam.fy = 32.0;
    cam.cx = cam.cy = 32.0;
    cam.width = cam.height = 64;
    return cam;
}

CameraBounds symmetric_bounds(double uv_half, double l_lo, double l_hi) {
    CameraBounds bounds;
    bounds.u_range = {-uv_half, uv_half};
    bounds.v_range = {-uv_half, uv_half};
    bounds.lambda_range = {l_lo, l_hi};
    return bounds;
}

SceneGrid single_cell_grid(const Vec3& lo, const Vec3& hi, double mass) {
    SceneGrid grid;
    grid.bounds_lo = lo;
    grid.bounds_hi = hi;
    grid.resolution = Vec3i(1, 1, 1);
    grid.cell_prob = {mass};
    return grid;
}

/// Column mass of viewdep (or raw) for a fixed (iu, iv).
double column_sum(const CameraGrid& grid, const std::vector<double>& field, int iu, int iv) {
    double sum = 0.0;
    for (int il = 0; il < grid.rl; ++il) sum += field[grid.index(iu, iv, il)];
    return sum;
}

}  // namespace

TEST_CASE("single occupied cell lands in one grid cell with eta^-2 weight") {
    // one scene cell of probability m centered at depth 2 on the optical axis
    const double m = 0.7;
    SceneGrid scene = single_cell_grid(Vec3(-0.04, -0.04, 1.96), Vec3(0.04, 0.04, 2.04), m);
    Camera cam = origin_camera();
    CameraBounds bounds = symmetric_bounds(0.5, 1.0, 3.0);

    CameraGrid grid = interpolate_camera_grid(scene, cam, bounds, Vec3i(5, 5, 5), 2);
    // all 8 subcells project to u, v within +-0.011 and lambda in [1.98, 2.02]:
    // the central cell (2, 2, 2)
    const double expected = m / 4.0;
    const double got = grid.raw[grid.index(2, 2, 2)];
    CHECK(std::abs(got - expected) / expected < 0.01);
    CHECK(grid.raw_total() == doctest::Approx(got));  // nothing lands elsewhere
}

TEST_CASE("eta is the projected subcell's z-depth exactly") {
    const double m = 1.3;
    const Vec3 center(0.3, -0.2, 2.5);
    SceneGrid scene = single_cell_grid(center - Vec3::Constant(0.005), center + Vec3::Constant(0.005), m);
    Camera cam = origin_camera();
    cam.center = Vec3(0.1, 0.0, -0.5);
    CameraBounds bounds = symmetric_bounds(0.8, 1.0, 5.0);

    CameraGrid grid = interpolate_camera_grid(scene, cam, bounds, Vec3i(9, 9, 9), 1);
    const ImageSpacePoint p = project(cam, center);
    const double expected = m / (p.lambda * p.lambda);
    CHECK(grid.raw_total() == expected);
}

TEST_CASE("scene outside the frustum produces the empty warning state") {
    SceneGrid scene = single_cell_grid(Vec3(-1, -1, -3), Vec3(1, 1, -2), 1.0);  // behind camera
    Camera cam = origin_camera();
    CameraBounds bounds = symmetric_bounds(0.5, 1.0, 3.0);
    CameraGrid grid = interpolate_camera_grid(scene, cam, bounds, Vec3i(4, 4, 4), 2);
    CHECK(grid.empty());
    CHECK(grid.raw_total() == 0.0);
    CHECK_THROWS_AS(normalize(grid), DegenerateDistributionError);
}

TEST_CASE("mass conservation against an independent flat accumulation") {
    AnalyticSdf sphere = AnalyticSdf::sphere(Vec3::Zero(), 1.0);
    SceneBoundary boundary = SceneBoundary::sphere(2.0);
    SceneGrid scene = build_scene_grid(sphere.as_fn(), boundary, Vec3i(32, 32, 32), 20.0);
    Camera cam = origin_camera();
    cam.center = Vec3(0, 0, -3.5);
    CameraBounds bounds = compute_bounds(cam, boundary);

    const int F = 2;
    CameraGrid grid = interpolate_camera_grid(scene, cam, bounds, Vec3i(16, 16, 32), F);

    KahanSum oracle;
    partition_cells(scene, F, [&](const PartitionedCell& cell) {
        const Vec3 xhat = world_to_camera(cam, cell.center);
        if (xhat.z() <= 0.0) return;
        const ImageSpacePoint p = camera_to_image(xhat);
        if (!bounds.contains(p)) return;
        oracle.add(cell.mass / (p.lambda * p.lambda));
    });
    // contains() is closed while binning is half-open; agreement within 1e-9
    // relative needs no boundary hits, which holds for this fixture
    CHECK(std::abs(grid.raw_total() - oracle.sum) / oracle.sum < 1e-9);
}

TEST_CASE("interpolation result is independent of thread count") {
    AnalyticSdf sphere = AnalyticSdf::sphere(Vec3::Zero(), 1.0);
    SceneBoundary boundary = SceneBoundary::sphere(2.0);
    SceneGrid scene = build_scene_grid(sphere.as_fn(), boundary, Vec3i(24, 24, 24), 30.0);
    Camera cam = origin_camera();
    cam.center = Vec3(0, 0, -3.5);
    CameraBounds bounds = compute_bounds(cam, boundary);

    CameraGrid a = interpolate_camera_grid(scene, cam, bounds, Vec3i(16, 16, 16), 2, 1);
    CameraGrid b = interpolate_camera_grid(scene, cam, bounds, Vec3i(16, 16, 16), 2, 7);
    CHECK(a.raw == b.raw);
}

TEST_CASE("half-open cell membership, closed at the top") {
    // two scene cells projecting exactly onto the interior edge u = 0 and the
    // top edge u = 0.5
    Camera cam = origin_camera();
    CameraBounds bounds = symmetric_bounds(0.5, 1.0, 3.0);

    SceneGrid on_interior_edge = single_cell_grid(Vec3(-0.5, -0.5, 1.5), Vec3(0.5, 0.5, 2.5), 1.0);
    CameraGrid grid = interpolate_camera_grid(on_interior_edge, cam, bounds, Vec3i(2, 2, 2), 1);
    // the single subcell center is (0, 0, 2): u = v = 0 goes to the upper cells
    CHECK(grid.raw[grid.index(1, 1, 1)] == doctest::Approx(0.25));
    CHECK(grid.raw_total() == doctest::Approx(0.25));

    SceneGrid at_top = single_cell_grid(Vec3(0.9, -0.1, 1.9), Vec3(1.1, 0.1, 2.1), 1.0);
    // subcell center (1.0, 0, 2): u = 0.5 exactly = bounds.hi -> last cell (closed)
    CameraBounds tight = symmetric_bounds(0.5, 1.0, 3.0);
    CameraGrid top_grid = interpolate_camera_grid(at_top, cam, tight, Vec3i(2, 2, 2), 1);
    CHECK(top_grid.raw[top_grid.index(1, 1, 1)] == doctest::Approx(0.25));
}

TEST_CASE("view dependency uses the exclusive transmittance prefix") {
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 1;
    grid.rv = 1;
    grid.rl = 4;
    grid.raw = {0.9, 0.0, 0.9, 0.0};
    grid.viewdep.assign(4, 0.0);

    apply_view_dependency(grid);
    CHECK(grid.viewdep[grid.index(0, 0, 0)] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(grid.viewdep[grid.index(0, 0, 1)] == 0.0);
    CHECK(grid.viewdep[grid.index(0, 0, 2)] ==
          doctest::Approx(0.9 * std::exp(-0.9)).epsilon(1e-15));
    CHECK(grid.viewdep[grid.index(0, 0, 3)] == 0.0);

    SUBCASE("inclusive form self-occludes") {
        apply_view_dependency(grid, 1.0, true);
        CHECK(grid.viewdep[grid.index(0, 0, 0)] ==
              doctest::Approx(0.9 * std::exp(-0.9)).epsilon(1e-15));
        CHECK(grid.viewdep[grid.index(0, 0, 2)] ==
              doctest::Approx(0.9 * std::exp(-1.8)).epsilon(1e-15));
    }

    SUBCASE("density scale multiplies the exponent") {
        apply_view_dependency(grid, 0.5);
        CHECK(grid.viewdep[grid.index(0, 0, 2)] ==
              doctest::Approx(0.9 * std::exp(-0.45)).epsilon(1e-15));
    }
}

TEST_CASE("view dependency edge cases") {
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 2;
    grid.rv = 1;
    grid.rl = 3;
    grid.raw = {0.0, 0.0, 0.0, 0.7, 0.0, 0.0};  // column 1 has one cell at depth index 1
    grid.viewdep.assign(6, 0.0);
    apply_view_dependency(grid);

    // all-zero column stays zero
    for (int il = 0; il < 3; ++il) CHECK(grid.viewdep[grid.index(0, 0, il)] == 0.0);
    // a single occupied cell is unchanged (transmittance 1 ahead of it)
    CHECK(grid.viewdep[grid.index(1, 0, 1)] == 0.7);
}

TEST_CASE("occlusion ordering: back copy attenuated by front mass") {
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 5.0);
    grid.ru = 1;
    grid.rv = 1;
    grid.rl = 16;
    grid.raw.assign(16, 0.0);
    const double value = 0.37;
    grid.raw[3] = value;   // depth a
    grid.raw[11] = value;  // depth b > a
    grid.viewdep.assign(16, 0.0);
    apply_view_dependency(grid);
    const double ratio = grid.viewdep[11] / grid.viewdep[3];
    CHECK(std::abs(ratio - std::exp(-value)) < 1e-9);
}

TEST_CASE("normalize scales by a single common divisor") {
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 2;
    grid.rv = 1;
    grid.rl = 1;
    grid.raw = {2.0, 2.0};
    grid.viewdep = {2.0, 2.0};
    normalize(grid);
    CHECK(grid.viewdep[0] == 0.5);
    CHECK(grid.viewdep[1] == 0.5);
    CHECK(grid.normalized);

    SUBCASE("zero mass throws") {
        CameraGrid empty = grid;
        empty.viewdep = {0.0, 0.0};
        CHECK_THROWS_AS(normalize(empty), DegenerateDistributionError);
    }
}

TEST_CASE("normalize preserves ratios of nonzero entries") {
    Pcg32 rng(41);
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 8;
    grid.rv = 8;
    grid.rl = 4;
    grid.raw.assign(grid.cell_count(), 0.0);
    grid.viewdep.resize(grid.cell_count());
    for (double& v : grid.viewdep) v = rng.next_double();
    const double a = grid.viewdep[17], b = grid.viewdep[101];
    normalize(grid);
    CHECK(std::abs(grid.viewdep[17] / grid.viewdep[101] - a / b) / (a / b) < 1e-12);
    CHECK(grid.viewdep_total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-wall scene: raw projection is depth-balanced, view dependency attenuates") {
    TwoWallScene scene = two_wall_scene();
    SceneGrid scene_grid =
        build_scene_grid(scene.sdf.as_fn(), scene.boundary, Vec3i(128, 128, 128), scene.s, 0);
    CameraBounds bounds = compute_bounds(scene.camera, scene.boundary);
    CameraGrid grid = interpolate_camera_grid(scene_grid, scene.camera, bounds,
                                              Vec3i(64, 64, 128), 2, 0);

    // central column; lambda bands around each wall
    const int iu = 32, iv = 32;
    const double dl = bounds.lambda_range.length() / grid.rl;
    auto band_mass = [&](const std::vector<double>& field, double depth) {
        double mass = 0.0;
        for (int il = 0; il < grid.rl; ++il) {
            const double lambda = bounds.lambda_range.lo + (il + 0.5) * dl;
            if (std::abs(lambda - depth) <= 0.5) mass += field[grid.index(iu, iv, il)];
        }
        return mass;
    };

    const double front_raw = band_mass(grid.raw, scene.front_depth);
    const double back_raw = band_mass(grid.raw, scene.back_depth);
    REQUIRE(front_raw > 0.0);
    const double raw_ratio = back_raw / front_raw;
    CHECK(raw_ratio > 0.8);
    CHECK(raw_ratio < 1.25);

    apply_view_dependency(grid);
    const double front_vd = band_mass(grid.viewdep, scene.front_depth);
    const double back_vd = band_mass(grid.viewdep, scene.back_depth);
    const double vd_ratio = back_vd / front_vd;
    const double expected = std::exp(-front_raw);
    CHECK(std::abs(vd_ratio / (raw_ratio * expected) - 1.0) < 0.10);
}

TEST_CASE("refining F shrinks the grid difference") {
    AnalyticSdf sphere = AnalyticSdf::sphere(Vec3::Zero(), 1.0);
    SceneBoundary boundary = SceneBoundary::sphere(2.0);
    SceneGrid scene = build_scene_grid(sphere.as_fn(), boundary, Vec3i(32, 32, 32), 20.0);
    Camera cam = origin_camera();
    cam.fx = cam.fy = 64.0;
    cam.center = Vec3(0, 0, -3.5);
    CameraBounds bounds = compute_bounds(cam, boundary);

    const Vec3i res(32, 32, 64);
    CameraGrid g1 = interpolate_camera_grid(scene, cam, bounds, res, 1);
    CameraGrid g2 = interpolate_camera_grid(scene, cam, bounds, res, 2);
    CameraGrid g4 = interpolate_camera_grid(scene, cam, bounds, res, 4);
    const double d12 = l1_normalized(g1.raw, g2.raw);
    const double d24 = l1_normalized(g2.raw, g4.raw);
    CHECK(d24 < d12);
}

TEST_CASE("transmittance never exceeds one: viewdep <= raw elementwise") {
    Pcg32 rng(47);
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 6;
    grid.rv = 6;
    grid.rl = 12;
    grid.raw.resize(grid.cell_count());
    for (double& v : grid.raw) v = rng.next_double() < 0.3 ? 2.0 * rng.next_double() : 0.0;
    grid.viewdep.assign(grid.cell_count(), 0.0);
    apply_view_dependency(grid);
    for (std::size_t i = 0; i < grid.cell_count(); ++i) CHECK(grid.viewdep[i] <= grid.raw[i]);
}

TEST_CASE("uv marginal sums viewdep over lambda") {
    CameraGrid grid;
    grid.bounds = symmetric_bounds(0.5, 1.0, 3.0);
    grid.ru = 2;
    grid.rv = 2;
    grid.rl = 2;
    grid.raw.assign(8, 0.0);
    grid.viewdep = {1, 2, 3, 4, 10, 20, 30, 40};
    auto marginal = uv_marginal(grid);
    CHECK(marginal == std::vector<double>{11, 22, 33, 44});
}
