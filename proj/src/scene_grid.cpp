// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/scene_grid.hpp"

#include "psray/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace psray {

double sigmoid_cdf(double o, double s) {
    double x = s * o;
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double logistic_density(double o, double s) {
    double p = sigmoid_cdf(o, s);
    return s * p * (1.0 - p);
}

double SceneGrid::total_mass() const {
    double sum = 0.0;
    for (double v : cell_prob) sum += v;
    return sum;
}

SceneGrid build_scene_grid(const SdfFn& sdf, const SceneBoundary& boundary,
                           const Vec3i& resolution, double s, int threads) {
    if ((resolution.array() < 1).any()) throw std::invalid_argument("grid resolution must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("logistic scale must be positive");

    SceneGrid grid;
    boundary.enclosing_box(grid.bounds_lo, grid.bounds_hi);
    grid.resolution = resolution;
    grid.s = s;
    grid.cell_prob.resize(grid.cell_count());

    const int rx = resolution.x(), ry = resolution.y();
    parallel_for(static_cast<std::size_t>(resolution.z()), threads, [&](std::size_t k) {
        for (int j = 0; j < ry; ++j)
            for (int i = 0; i < rx; ++i) {
                Vec3 c = grid.center_of(i, j, static_cast<int>(k));
                grid.cell_prob[grid.index(i, j, static_cast<int>(k))] =
                    logistic_density(sdf(c), s);
            }
    });
    return grid;
}

void partition_cells(const SceneGrid& grid, int F,
                     const std::function<void(const PartitionedCell&)>& sink) {
    if (F < 1) throw std::invalid_argument("partition factor must be >= 1");
    for_each_subcell(grid, F, 0, grid.cell_count(), sink);
}

}  // namespace psray
