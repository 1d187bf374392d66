// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/geometry.hpp"
#include "psray/math.hpp"
#include "psray/sdf.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace psray {

/// Logistic CDF, 1 / (1 + e^{-s o}); the sigmoid of scale s.
double sigmoid_cdf(double o, double s);

// Logistic density of scale s, the derivative of sigmoid_cdf:
// s e^{-s o} / (1 + e^{-s o})^2. Even in o, maximal at o = 0 where it
// equals s / 4. Numerically stable for any |s o|.
double logistic_density(double o, double s);

// Scene-space probability grid over the boundary's enclosing box. Cell
// values are unnormalized densities phi_s(S(center)); per-camera grids
// renormalize later. Layout is row-major with x fastest.
struct SceneGrid {
    Vec3 bounds_lo = Vec3::Zero();
    Vec3 bounds_hi = Vec3::Ones();
    Vec3i resolution = Vec3i(1, 1, 1);
    std::vector<double> cell_prob;
    double s = 1.0;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(resolution.x()) * resolution.y() * resolution.z();
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * resolution.y() + j) * resolution.x() + i;
    }
    Vec3 cell_size() const {
        return (bounds_hi - bounds_lo).cwiseQuotient(resolution.cast<double>());
    }
    Vec3 center_of(int i, int j, int k) const {
        Vec3 sz = cell_size();
        return bounds_lo + Vec3((i + 0.5) * sz.x(), (j + 0.5) * sz.y(), (k + 0.5) * sz.z());
    }
    double total_mass() const;
};

/// One of the F^3 equal-volume children of a scene cell; carries 1/F^3 of
/// the parent's probability.
struct PartitionedCell {
    Vec3 center;
    double mass;
};

SceneGrid build_scene_grid(const SdfFn& sdf, const SceneBoundary& boundary,
                           const Vec3i& resolution, double s, int threads = 1);

// Streams subcells for parents in the row-major index range [begin, end),
// subcells in x-fastest order within each parent.
template <typename Fn>
void for_each_subcell(const SceneGrid& grid, int F, std::size_t begin, std::size_t end, Fn&& fn) {
    const Vec3 sz = grid.cell_size();
    const Vec3 sub = sz / F;
    const double inv_f3 = 1.0 / (static_cast<double>(F) * F * F);
    const int rx = grid.resolution.x(), ry = grid.resolution.y();
    PartitionedCell cell;
    for (std::size_t p = begin; p < end; ++p) {
        const int i = static_cast<int>(p % rx);
        const int j = static_cast<int>((p / rx) % ry);
        const int k = static_cast<int>(p / (static_cast<std::size_t>(rx) * ry));
        cell.mass = grid.cell_prob[p] * inv_f3;
        const Vec3 origin = grid.bounds_lo + Vec3(i * sz.x(), j * sz.y(), k * sz.z());
        for (int fk = 0; fk < F; ++fk)
            for (int fj = 0; fj < F; ++fj)
                for (int fi = 0; fi < F; ++fi) {
                    cell.center = origin + Vec3((fi + 0.5) * sub.x(), (fj + 0.5) * sub.y(),
                                                (fk + 0.5) * sub.z());
                    fn(cell);
                }
    }
}

// Streams the F x F x F subdivision of every cell in row-major parent order
// (x fastest), subcells in the same order within each parent. Total emitted
// mass equals the grid total.
void partition_cells(const SceneGrid& grid, int F,
                     const std::function<void(const PartitionedCell&)>& sink);

}  // namespace psray
