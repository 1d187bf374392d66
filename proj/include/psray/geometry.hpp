// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/errors.hpp"
#include "psray/math.hpp"

#include <string>
#include <vector>

namespace psray {

/// A point in the 3-dimensional image space: normalized image coordinates
/// (u, v) plus z-depth lambda (world units, > 0 in front of the camera).
struct ImageSpacePoint {
    double u = 0.0;
    double v = 0.0;
    double lambda = 0.0;
};

// Calibrated pinhole camera. `rotation` is the camera-to-world orientation
// R; world-to-camera applies its transpose: x_cam = R^T (x_world - center).
// Intrinsics map pixels to normalized coordinates, u = (px - cx) / fx.
struct Camera {
    Mat3 rotation = Mat3::Identity();
    Vec3 center = Vec3::Zero();
    double fx = 1.0, fy = 1.0;
    double cx = 0.0, cy = 0.0;
    int width = 1, height = 1;

    /// Throws ParseError unless rotation is orthonormal with det +1 (1e-9),
    /// fx, fy > 0 and the image size is at least 1x1.
    void validate() const;

    Vec3 optical_axis_world() const { return rotation.col(2); }
};

/// Scene extent: an origin-centered sphere or an axis-aligned box.
struct SceneBoundary {
    enum class Kind { Sphere, Box };

    Kind kind = Kind::Sphere;
    double radius = 1.0;   // sphere
    Vec3 box_min = Vec3(-1, -1, -1);
    Vec3 box_max = Vec3(1, 1, 1);

    static SceneBoundary sphere(double r);
    static SceneBoundary box(const Vec3& lo, const Vec3& hi);

    /// Tight axis-aligned box enclosing the boundary.
    void enclosing_box(Vec3& lo, Vec3& hi) const;
    bool contains(const Vec3& x) const;

    // Entry/exit parameters of ray origin + t * dir against the boundary
    // surface. Returns false on a miss; dir need not be unit length.
    bool intersect_ray(const Vec3& origin, const Vec3& dir, double& t_near, double& t_far) const;
};

/// Valid ranges of (u, v, lambda) for one camera against a scene boundary.
struct CameraBounds {
    Interval u_range;
    Interval v_range;
    Interval lambda_range;

    bool contains(const ImageSpacePoint& p) const {
        return u_range.contains(p.u) && v_range.contains(p.v) && lambda_range.contains(p.lambda);
    }
};

/// Rigid world-to-camera transform, x_cam = R^T (x - t).
Vec3 world_to_camera(const Camera& cam, const Vec3& x);

/// [x/z, y/z, z]; throws BehindCameraError when z <= 0.
ImageSpacePoint camera_to_image(const Vec3& xhat);

/// Full projection f(x) = g(h(x)).
ImageSpacePoint project(const Camera& cam, const Vec3& x);

/// Inverse of project; throws InvalidDepthError when lambda <= 0.
Vec3 unproject(const Camera& cam, const ImageSpacePoint& p);

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
    double depth;    // Euclidean distance along the ray to f^-1(u), not z-depth
};

/// Ray from the camera center through the unprojected sample point.
Ray ray_from_sample(const Camera& cam, const ImageSpacePoint& u_tilde);

// (u, v) ranges from the four image corners mapped through the inverse
// intrinsics; lambda range from the central-pixel ray's entry/exit of the
// boundary. Throws NoIntersectionError when that ray misses.
CameraBounds compute_bounds(const Camera& cam, const SceneBoundary& boundary);

/// Pixel position of a normalized image point: px = u * fx + cx.
inline void image_point_to_pixel(const Camera& cam, double u, double v, double& px, double& py) {
    px = u * cam.fx + cam.cx;
    py = v * cam.fy + cam.cy;
}

/// Inverse intrinsics: u = (px - cx) / fx.
inline void pixel_to_image_point(const Camera& cam, double px, double py, double& u, double& v) {
    u = (px - cam.cx) / cam.fx;
    v = (py - cam.cy) / cam.fy;
}

}  // namespace psray
