// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/sdf.hpp"

#include "psray/errors.hpp"
#include "psray/grid_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace psray {

AnalyticSdf AnalyticSdf::sphere(const Vec3& center, double radius) {
    AnalyticSdf s;
    s.shape_ = Shape::Sphere;
    s.center_ = center;
    s.radius_ = radius;
    return s;
}

AnalyticSdf AnalyticSdf::box(const Vec3& center, const Vec3& half_extents) {
    AnalyticSdf s;
    s.shape_ = Shape::Box;
    s.center_ = center;
    s.half_extents_ = half_extents;
    return s;
}

AnalyticSdf AnalyticSdf::wall(int axis, double position, double thickness) {
    AnalyticSdf s;
    s.shape_ = Shape::Wall;
    s.axis_ = axis;
    s.position_ = position;
    s.thickness_ = thickness;
    return s;
}

AnalyticSdf AnalyticSdf::union_of(std::vector<AnalyticSdf> parts) {
    AnalyticSdf s;
    s.shape_ = Shape::Union;
    s.children_ = std::move(parts);
    return s;
}

double AnalyticSdf::eval(const Vec3& x) const {
    switch (shape_) {
        case Shape::Sphere:
            return (x - center_).norm() - radius_;
        case Shape::Box: {
            Vec3 q = (x - center_).cwiseAbs() - half_extents_;
            double outside = q.cwiseMax(0.0).norm();
            double inside = std::min(q.maxCoeff(), 0.0);
            return outside + inside;
        }
        case Shape::Wall:
            return std::abs(x[axis_] - position_) - 0.5 * thickness_;
        case Shape::Union: {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : children_) d = std::min(d, c.eval(x));
            return d;
        }
    }
    return 0.0;
}

VoxelSdf::VoxelSdf(Vec3 lo, Vec3 hi, Vec3i dims, std::vector<float> values)
    : lo_(std::move(lo)), hi_(std::move(hi)), dims_(std::move(dims)), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(dims_.x()) * dims_.y() * dims_.z())
        throw ParseError("voxel SDF payload size does not match dims");
}

VoxelSdf VoxelSdf::load(const std::string& path) {
    GridDump dump = read_grid_dump(path);
    if (dump.kind != GridKind::Scene) throw ParseError("voxel SDF must be a scene-kind grid dump");
    return VoxelSdf(dump.bounds_lo, dump.bounds_hi, dump.dims, std::move(dump.payload));
}

double VoxelSdf::eval(const Vec3& x) const {
    // Continuous coordinates in cell-center units, clamped to the border cells.
    double coords[3];
    for (int a = 0; a < 3; ++a) {
        double extent = hi_[a] - lo_[a];
        double c = (x[a] - lo_[a]) / extent * dims_[a] - 0.5;
        coords[a] = std::clamp(c, 0.0, static_cast<double>(dims_[a] - 1));
    }
    int i0[3], i1[3];
    double f[3];
    for (int a = 0; a < 3; ++a) {
        i0[a] = std::min(static_cast<int>(coords[a]), dims_[a] - 1);
        i1[a] = std::min(i0[a] + 1, dims_[a] - 1);
        f[a] = coords[a] - i0[a];
    }
    auto at = [&](int i, int j, int k) {
        return static_cast<double>(values_[(static_cast<size_t>(k) * dims_.y() + j) * dims_.x() + i]);
    };
    double c00 = at(i0[0], i0[1], i0[2]) * (1 - f[0]) + at(i1[0], i0[1], i0[2]) * f[0];
    double c10 = at(i0[0], i1[1], i0[2]) * (1 - f[0]) + at(i1[0], i1[1], i0[2]) * f[0];
    double c01 = at(i0[0], i0[1], i1[2]) * (1 - f[0]) + at(i1[0], i0[1], i1[2]) * f[0];
    double c11 = at(i0[0], i1[1], i1[2]) * (1 - f[0]) + at(i1[0], i1[1], i1[2]) * f[0];
    double c0 = c00 * (1 - f[1]) + c10 * f[1];
    double c1 = c01 * (1 - f[1]) + c11 * f[1];
    return c0 * (1 - f[2]) + c1 * f[2];
}

}  // namespace psray
