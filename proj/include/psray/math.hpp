// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace psray {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec3i = Eigen::Vector3i;

inline constexpr double kPi = 3.14159265358979323846;

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Bin index for x in [lo, hi) split into n equal cells; the last cell is
// closed so x == hi maps to n - 1. Returns -1 when x is outside.
inline int bin_index(double x, double lo, double hi, int n) {
    if (x < lo || x > hi) return -1;
    if (x == hi) return n - 1;
    int i = static_cast<int>((x - lo) / (hi - lo) * n);
    if (i >= n) i = n - 1;  // guard against rounding at the far edge
    return i;
}

/// Center coordinate of cell i in [lo, hi) split into n equal cells.
inline double cell_center(int i, double lo, double hi, int n) {
    return lo + (i + 0.5) * (hi - lo) / n;
}

}  // namespace psray
