// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/geometry.hpp"

#include "psray/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace psray;

namespace {

Camera identity_camera() {
    Camera cam;
    cam.fx = cam.fy = 32.0;
    cam.cx = cam.cy = 32.0;
    cam.width = cam.height = 64;
    return cam;
}

/// Random orthonormal rotation with det +1 (Gram-Schmidt on random vectors).
Mat3 random_rotation(Pcg32& rng) {
    Vec3 a, b;
    for (int i = 0; i < 3; ++i) a[i] = rng.next_gaussian();
    for (int i = 0; i < 3; ++i) b[i] = rng.next_gaussian();
    Vec3 x = a.normalized();
    Vec3 z = x.cross(b).normalized();
    Vec3 y = z.cross(x);
    Mat3 r;
    r.col(0) = x;
    r.col(1) = y;
    r.col(2) = z;
    return r;
}

Camera random_camera(Pcg32& rng) {
    Camera cam = identity_camera();
    cam.rotation = random_rotation(rng);
    for (int i = 0; i < 3; ++i) cam.center[i] = 4.0 * (rng.next_double() - 0.5);
    return cam;
}

/// Point guaranteed to sit in front of the camera.
Vec3 random_point_in_front(const Camera& cam, Pcg32& rng) {
    double u = 2.0 * (rng.next_double() - 0.5);
    double v = 2.0 * (rng.next_double() - 0.5);
    double depth = 0.5 + 4.0 * rng.next_double();
    return unproject(cam, {u, v, depth});
}

}  // namespace

TEST_CASE("world_to_camera translation only") {
    Camera cam = identity_camera();
    cam.center = Vec3(0, 0, -3);
    Vec3 xhat = world_to_camera(cam, Vec3(0, 0, 0));
    CHECK(xhat.isApprox(Vec3(0, 0, 3), 1e-15));
}

TEST_CASE("world_to_camera identity transform") {
    Camera cam = identity_camera();
    Vec3 xhat = world_to_camera(cam, Vec3(1, 2, 3));
    CHECK(xhat.isApprox(Vec3(1, 2, 3), 1e-15));
}

TEST_CASE("world_to_camera 90 degree rotation about z") {
    Camera cam = identity_camera();
    cam.rotation << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    // independent evaluation: R^T x with R^T = [[0,1,0],[-1,0,0],[0,0,1]]
    Mat3 rt;
    rt << 0, 1, 0, -1, 0, 0, 0, 0, 1;
    Vec3 x(1, 0, 0);
    CHECK(world_to_camera(cam, x).isApprox(rt * x, 1e-15));
    CHECK(world_to_camera(cam, x).isApprox(Vec3(0, -1, 0), 1e-15));
}

TEST_CASE("world_to_camera preserves pairwise distances") {
    Pcg32 rng(7);
    for (int i = 0; i < 50; ++i) {
        Camera cam = random_camera(rng);
        Vec3 a(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
        Vec3 b(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
        double before = (a - b).norm();
        double after = (world_to_camera(cam, a) - world_to_camera(cam, b)).norm();
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("camera_to_image divides by depth") {
    ImageSpacePoint p = camera_to_image(Vec3(2, 4, 2));
    CHECK(p.u == doctest::Approx(1.0));
    CHECK(p.v == doctest::Approx(2.0));
    CHECK(p.lambda == 2.0);
}

TEST_CASE("camera_to_image optical axis") {
    ImageSpacePoint p = camera_to_image(Vec3(0, 0, 5));
    CHECK(p.u == 0.0);
    CHECK(p.v == 0.0);
    CHECK(p.lambda == 5.0);
}

TEST_CASE("camera_to_image rejects non-positive depth") {
    CHECK_THROWS_AS(camera_to_image(Vec3(1, 1, -1)), BehindCameraError);
    CHECK_THROWS_AS(camera_to_image(Vec3(1, 1, 0)), BehindCameraError);
}

TEST_CASE("project composes transform and projection") {
    Camera cam = identity_camera();
    ImageSpacePoint p = project(cam, Vec3(0.5, 0.5, 1.0));
    CHECK(p.u == doctest::Approx(0.5));
    CHECK(p.v == doctest::Approx(0.5));
    CHECK(p.lambda == doctest::Approx(1.0));

    cam.center = Vec3(0, 0, -3);
    ImageSpacePoint q = project(cam, Vec3(0, 0, 0));
    CHECK(q.u == 0.0);
    CHECK(q.v == 0.0);
    CHECK(q.lambda == doctest::Approx(3.0));
}

TEST_CASE("unproject basics") {
    Camera cam = identity_camera();
    Vec3 a = unproject(cam, {0, 0, 2});
    CHECK(a.isApprox(Vec3(0, 0, 2), 1e-15));
    Vec3 b = unproject(cam, {1, 1, 2});
    CHECK(b.isApprox(Vec3(2, 2, 2), 1e-15));
    CHECK_THROWS_AS(unproject(cam, {0, 0, -1}), InvalidDepthError);
    CHECK_THROWS_AS(unproject(cam, {0, 0, 0}), InvalidDepthError);
}

TEST_CASE("round-trip: unproject(project(x)) = x over random poses") {
    Pcg32 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Camera cam = random_camera(rng);
        Vec3 x = random_point_in_front(cam, rng);
        Vec3 back = unproject(cam, project(cam, x));
        worst = std::max(worst, (back - x).norm() / std::max(1.0, x.norm()));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("round-trip: project(unproject(u)) = u over random poses") {
    Pcg32 rng(13);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Camera cam = random_camera(rng);
        ImageSpacePoint u{2.0 * (rng.next_double() - 0.5), 2.0 * (rng.next_double() - 0.5),
                          0.5 + 4.0 * rng.next_double()};
        ImageSpacePoint back = project(cam, unproject(cam, u));
        worst = std::max({worst, std::abs(back.u - u.u), std::abs(back.v - u.v),
                          std::abs(back.lambda - u.lambda)});
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("ray_from_sample on-axis") {
    Camera cam = identity_camera();
    Ray ray = ray_from_sample(cam, {0, 0, 2});
    CHECK(ray.origin.isApprox(Vec3::Zero(), 1e-15));
    CHECK(ray.direction.isApprox(Vec3(0, 0, 1), 1e-15));
    CHECK(ray.depth == doctest::Approx(2.0));
}

TEST_CASE("ray_from_sample off-axis depth conversion") {
    Camera cam = identity_camera();
    Ray ray = ray_from_sample(cam, {1, 0, 1});
    CHECK(ray.direction.isApprox(Vec3(1, 0, 1).normalized(), 1e-14));
    CHECK(ray.depth == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("ray re-projection property") {
    Pcg32 rng(17);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Camera cam = random_camera(rng);
        ImageSpacePoint u{2.0 * (rng.next_double() - 0.5), 2.0 * (rng.next_double() - 0.5),
                          0.5 + 4.0 * rng.next_double()};
        Ray ray = ray_from_sample(cam, u);
        CHECK(std::abs(ray.direction.norm() - 1.0) < 1e-12);
        ImageSpacePoint back = project(cam, ray.origin + ray.depth * ray.direction);
        worst = std::max({worst, std::abs(back.u - u.u), std::abs(back.v - u.v),
                          std::abs(back.lambda - u.lambda)});
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("numerical Jacobian determinant of the unprojection equals depth squared") {
    Pcg32 rng(19);
    for (int i = 0; i < 200; ++i) {
        Camera cam = random_camera(rng);
        ImageSpacePoint u{2.0 * (rng.next_double() - 0.5), 2.0 * (rng.next_double() - 0.5),
                          0.5 + 4.0 * rng.next_double()};
        const double h = 1e-5;
        Mat3 jac;
        for (int axis = 0; axis < 3; ++axis) {
            ImageSpacePoint hi = u, lo = u;
            (axis == 0 ? hi.u : axis == 1 ? hi.v : hi.lambda) += h;
            (axis == 0 ? lo.u : axis == 1 ? lo.v : lo.lambda) -= h;
            jac.col(axis) = (unproject(cam, hi) - unproject(cam, lo)) / (2.0 * h);
        }
        const double expected = u.lambda * u.lambda;
        CHECK(std::abs(jac.determinant() - expected) / expected < 1e-5);
    }
}

TEST_CASE("compute_bounds: central ray against the unit sphere") {
    Camera cam = identity_camera();
    cam.center = Vec3(0, 0, -3);
    CameraBounds bounds = compute_bounds(cam, SceneBoundary::sphere(1.0));
    CHECK(bounds.lambda_range.lo == doctest::Approx(2.0));
    CHECK(bounds.lambda_range.hi == doctest::Approx(4.0));
}

TEST_CASE("compute_bounds: corners through inverse intrinsics") {
    Camera cam = identity_camera();  // 64x64, fx = fy = 32, cx = cy = 32
    cam.center = Vec3(0, 0, -3);
    CameraBounds bounds = compute_bounds(cam, SceneBoundary::sphere(1.0));
    CHECK(bounds.u_range.lo == doctest::Approx(-1.0));
    CHECK(bounds.u_range.hi == doctest::Approx(1.0));
    CHECK(bounds.v_range.lo == doctest::Approx(-1.0));
    CHECK(bounds.v_range.hi == doctest::Approx(1.0));
}

TEST_CASE("compute_bounds: corner projections stay inside the u/v ranges") {
    Pcg32 rng(23);
    for (int i = 0; i < 20; ++i) {
        Camera cam = identity_camera();
        cam.rotation = random_rotation(rng);
        cam.center = -6.0 * cam.optical_axis_world();
        CameraBounds bounds = compute_bounds(cam, SceneBoundary::sphere(2.0));
        for (double px : {0.0, 64.0})
            for (double py : {0.0, 64.0}) {
                double u = 0, v = 0;
                pixel_to_image_point(cam, px, py, u, v);
                CHECK(bounds.u_range.contains(u));
                CHECK(bounds.v_range.contains(v));
            }
        CHECK(bounds.lambda_range.lo > 0.0);
        CHECK(bounds.lambda_range.lo < bounds.lambda_range.hi);
    }
}

TEST_CASE("compute_bounds: camera pointing away misses the boundary") {
    Camera cam = identity_camera();
    cam.center = Vec3(0, 0, 3);  // boundary behind the +z view direction
    CHECK_THROWS_AS(compute_bounds(cam, SceneBoundary::sphere(1.0)), NoIntersectionError);
}

TEST_CASE("compute_bounds: box boundary slab test") {
    Camera cam = identity_camera();
    cam.center = Vec3(0, 0, -4);
    CameraBounds bounds =
        compute_bounds(cam, SceneBoundary::box(Vec3(-1, -1, -1), Vec3(1, 1, 1)));
    CHECK(bounds.lambda_range.lo == doctest::Approx(3.0));
    CHECK(bounds.lambda_range.hi == doctest::Approx(5.0));
}

TEST_CASE("camera validation catches bad inputs") {
    Camera cam = identity_camera();
    CHECK_NOTHROW(cam.validate());
    Camera bad = cam;
    bad.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(bad.validate(), ParseError);
    bad = cam;
    bad.rotation.col(0) = -bad.rotation.col(0);  // det -1
    CHECK_THROWS_AS(bad.validate(), ParseError);
    bad = cam;
    bad.fx = 0.0;
    CHECK_THROWS_AS(bad.validate(), ParseError);
    bad = cam;
    bad.width = 0;
    CHECK_THROWS_AS(bad.validate(), ParseError);
}
