// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace psray {

void Camera::validate() const {
    Mat3 rtr = rotation.transpose() * rotation;
    if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw ParseError("camera rotation is not orthonormal");
    if (std::abs(rotation.determinant() - 1.0) > 1e-9)
        throw ParseError("camera rotation determinant is not +1");
    if (!(fx > 0.0) || !(fy > 0.0)) throw ParseError("focal lengths must be positive");
    if (width < 1 || height < 1) throw ParseError("image size must be at least 1x1");
}

SceneBoundary SceneBoundary::sphere(double r) {
    SceneBoundary b;
    b.kind = Kind::Sphere;
    b.radius = r;
    return b;
}

SceneBoundary SceneBoundary::box(const Vec3& lo, const Vec3& hi) {
    SceneBoundary b;
    b.kind = Kind::Box;
    b.box_min = lo;
    b.box_max = hi;
    return b;
}

void SceneBoundary::enclosing_box(Vec3& lo, Vec3& hi) const {
    if (kind == Kind::Sphere) {
        lo = Vec3(-radius, -radius, -radius);
        hi = Vec3(radius, radius, radius);
    } else {
        lo = box_min;
        hi = box_max;
    }
}

bool SceneBoundary::contains(const Vec3& x) const {
    if (kind == Kind::Sphere) return x.norm() <= radius;
    return (x.array() >= box_min.array()).all() && (x.array() <= box_max.array()).all();
}

bool SceneBoundary::intersect_ray(const Vec3& origin, const Vec3& dir, double& t_near,
                                  double& t_far) const {
    if (kind == Kind::Sphere) {
        double a = dir.squaredNorm();
        double b = 2.0 * origin.dot(dir);
        double c = origin.squaredNorm() - radius * radius;
        double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) return false;
        double sq = std::sqrt(disc);
        t_near = (-b - sq) / (2.0 * a);
        t_far = (-b + sq) / (2.0 * a);
        return true;
    }
    // slab test
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        if (dir[axis] == 0.0) {
            if (origin[axis] < box_min[axis] || origin[axis] > box_max[axis]) return false;
            continue;
        }
        double inv = 1.0 / dir[axis];
        double ta = (box_min[axis] - origin[axis]) * inv;
        double tb = (box_max[axis] - origin[axis]) * inv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    t_near = t0;
    t_far = t1;
    return true;
}

Vec3 world_to_camera(const Camera& cam, const Vec3& x) {
    return cam.rotation.transpose() * (x - cam.center);
}

ImageSpacePoint camera_to_image(const Vec3& xhat) {
    if (!(xhat.z() > 0.0)) throw BehindCameraError("point has non-positive camera depth");
    return {xhat.x() / xhat.z(), xhat.y() / xhat.z(), xhat.z()};
}

ImageSpacePoint project(const Camera& cam, const Vec3& x) {
    return camera_to_image(world_to_camera(cam, x));
}

Vec3 unproject(const Camera& cam, const ImageSpacePoint& p) {
    if (!(p.lambda > 0.0)) throw InvalidDepthError("image-space depth must be positive");
    Vec3 xhat(p.u * p.lambda, p.v * p.lambda, p.lambda);
    return cam.rotation * xhat + cam.center;
}

Ray ray_from_sample(const Camera& cam, const ImageSpacePoint& u_tilde) {
    Vec3 target = unproject(cam, u_tilde);
    Vec3 offset = target - cam.center;
    double dist = offset.norm();
    return {cam.center, offset / dist, dist};
}

CameraBounds compute_bounds(const Camera& cam, const SceneBoundary& boundary) {
    CameraBounds bounds;

    // The outer pixel-grid corners (0,0)..(W,H) through the inverse intrinsics.
    const double corner_px[4][2] = {{0.0, 0.0},
                                    {static_cast<double>(cam.width), 0.0},
                                    {0.0, static_cast<double>(cam.height)},
                                    {static_cast<double>(cam.width), static_cast<double>(cam.height)}};
    double u0 = 0, v0 = 0;
    pixel_to_image_point(cam, corner_px[0][0], corner_px[0][1], u0, v0);
    bounds.u_range = {u0, u0};
    bounds.v_range = {v0, v0};
    for (int i = 1; i < 4; ++i) {
        double u = 0, v = 0;
        pixel_to_image_point(cam, corner_px[i][0], corner_px[i][1], u, v);
        bounds.u_range.lo = std::min(bounds.u_range.lo, u);
        bounds.u_range.hi = std::max(bounds.u_range.hi, u);
        bounds.v_range.lo = std::min(bounds.v_range.lo, v);
        bounds.v_range.hi = std::max(bounds.v_range.hi, v);
    }

    // Depth range from the central pixel's ray.
    double uc = 0, vc = 0;
    pixel_to_image_point(cam, cam.width / 2.0, cam.height / 2.0, uc, vc);
    Vec3 dir = (cam.rotation * Vec3(uc, vc, 1.0)).normalized();
    double t0 = 0, t1 = 0;
    if (!boundary.intersect_ray(cam.center, dir, t0, t1) || t1 <= 0.0)
        throw NoIntersectionError("central pixel ray misses the scene boundary");
    // A camera inside the boundary has t0 <= 0; keep the lower bound positive.
    if (t0 <= 0.0) t0 = t1 * 1e-6;
    bounds.lambda_range = {t0, t1};
    return bounds;
}

}  // namespace psray
