// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/math.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace psray {

/// Signed distance evaluation, negative inside the surface.
using SdfFn = std::function<double(const Vec3&)>;

// Exact analytic signed distance fields; union takes the pointwise minimum
// of its children (a valid SDF lower bound).
class AnalyticSdf {
  public:
    static AnalyticSdf sphere(const Vec3& center, double radius);
    static AnalyticSdf box(const Vec3& center, const Vec3& half_extents);
    /// Infinite slab of the given thickness perpendicular to `axis` at `position`.
    static AnalyticSdf wall(int axis, double position, double thickness);
    static AnalyticSdf union_of(std::vector<AnalyticSdf> parts);

    double eval(const Vec3& x) const;
    double operator()(const Vec3& x) const { return eval(x); }

    SdfFn as_fn() const {
        AnalyticSdf copy = *this;
        return [copy](const Vec3& x) { return copy.eval(x); };
    }

  private:
    enum class Shape { Sphere, Box, Wall, Union };

    Shape shape_ = Shape::Sphere;
    Vec3 center_ = Vec3::Zero();
    Vec3 half_extents_ = Vec3::Ones();  // box
    double radius_ = 1.0;               // sphere
    int axis_ = 2;                      // wall
    double position_ = 0.0;             // wall
    double thickness_ = 0.1;            // wall
    std::vector<AnalyticSdf> children_;
};

// SDF sampled on a regular grid of cell centers, evaluated by trilinear
// interpolation (clamped at the border). Loadable from a scene grid dump
// whose payload holds SDF values instead of probabilities.
class VoxelSdf {
  public:
    VoxelSdf(Vec3 lo, Vec3 hi, Vec3i dims, std::vector<float> values);

    static VoxelSdf load(const std::string& path);

    double eval(const Vec3& x) const;
    double operator()(const Vec3& x) const { return eval(x); }

    SdfFn as_fn() const {
        auto self = std::make_shared<VoxelSdf>(*this);
        return [self](const Vec3& x) { return self->eval(x); };
    }

  private:
    Vec3 lo_, hi_;
    Vec3i dims_;
    std::vector<float> values_;
};

}  // namespace psray
