// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/image_grid.hpp"

#include "psray/errors.hpp"
#include "psray/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace psray {

namespace {

// Parent cells are reduced in this fixed number of contiguous blocks; the
// per-cell addition order is the row-major subcell order for any thread
// count (including one).
constexpr std::size_t kReductionBlocks = 16;

}  // namespace

double CameraGrid::raw_total() const {
    double sum = 0.0;
    for (double v : raw) sum += v;
    return sum;
}

double CameraGrid::viewdep_total() const {
    double sum = 0.0;
    for (double v : viewdep) sum += v;
    return sum;
}

CameraGrid interpolate_camera_grid(const SceneGrid& scene, const Camera& cam,
                                   const CameraBounds& bounds, const Vec3i& resolution, int F,
                                   int threads) {
    if (F < 1) throw std::invalid_argument("partition factor must be >= 1");
    if ((resolution.array() < 1).any()) throw std::invalid_argument("grid resolution must be >= 1");

    CameraGrid grid;
    grid.bounds = bounds;
    grid.ru = resolution.x();
    grid.rv = resolution.y();
    grid.rl = resolution.z();
    grid.raw.assign(grid.cell_count(), 0.0);
    grid.viewdep.assign(grid.cell_count(), 0.0);

    const Mat3 rot_t = cam.rotation.transpose();
    const Vec3 center = cam.center;
    const double u_lo = bounds.u_range.lo, u_hi = bounds.u_range.hi;
    const double v_lo = bounds.v_range.lo, v_hi = bounds.v_range.hi;
    const double l_lo = bounds.lambda_range.lo, l_hi = bounds.lambda_range.hi;

    const std::size_t parents = scene.cell_count();
    const std::size_t blocks = std::min(kReductionBlocks, parents == 0 ? 1 : parents);
    std::vector<std::vector<double>> partial(blocks);

    parallel_for(blocks, threads, [&](std::size_t b) {
        std::vector<double>& acc = partial[b];
        acc.assign(grid.cell_count(), 0.0);
        const std::size_t begin = parents * b / blocks;
        const std::size_t end = parents * (b + 1) / blocks;
        for_each_subcell(scene, F, begin, end, [&](const PartitionedCell& cell) {
            if (cell.mass == 0.0) return;
            const Vec3 xhat = rot_t * (cell.center - center);
            const double eta = xhat.z();
            if (eta <= 0.0) return;
            const int iu = bin_index(xhat.x() / eta, u_lo, u_hi, grid.ru);
            if (iu < 0) return;
            const int iv = bin_index(xhat.y() / eta, v_lo, v_hi, grid.rv);
            if (iv < 0) return;
            const int il = bin_index(eta, l_lo, l_hi, grid.rl);
            if (il < 0) return;
            acc[grid.index(iu, iv, il)] += cell.mass / (eta * eta);
        });
    });

    // Per-cell reduction in block order, independent of thread count.
    parallel_for(static_cast<std::size_t>(grid.rl), threads, [&](std::size_t il) {
        const std::size_t slab = static_cast<std::size_t>(grid.ru) * grid.rv;
        for (std::size_t c = il * slab; c < (il + 1) * slab; ++c) {
            double sum = 0.0;
            for (std::size_t b = 0; b < blocks; ++b) sum += partial[b][c];
            grid.raw[c] = sum;
        }
    });
    return grid;
}

void apply_view_dependency(CameraGrid& grid, double density_scale, bool inclusive_prefix) {
    const std::size_t column_stride = static_cast<std::size_t>(grid.ru) * grid.rv;
    for (int iv = 0; iv < grid.rv; ++iv)
        for (int iu = 0; iu < grid.ru; ++iu) {
            std::size_t idx = grid.index(iu, iv, 0);
            double acc = 0.0;
            for (int il = 0; il < grid.rl; ++il, idx += column_stride) {
                const double raw = grid.raw[idx];
                if (inclusive_prefix) acc += raw;
                grid.viewdep[idx] = raw * std::exp(-density_scale * acc);
                if (!inclusive_prefix) acc += raw;
            }
        }
    grid.normalized = false;
}

void disable_view_dependency(CameraGrid& grid) {
    grid.viewdep = grid.raw;
    grid.normalized = false;
}

void normalize(CameraGrid& grid) {
    const double total = grid.viewdep_total();
    if (!(total > 0.0))
        throw DegenerateDistributionError("camera grid has zero total mass");
    const double inv = 1.0 / total;
    for (double& v : grid.viewdep) v *= inv;
    grid.normalized = true;
}

std::vector<double> uv_marginal(const CameraGrid& grid) {
    std::vector<double> marginal(static_cast<std::size_t>(grid.ru) * grid.rv, 0.0);
    for (int il = 0; il < grid.rl; ++il)
        for (int iv = 0; iv < grid.rv; ++iv)
            for (int iu = 0; iu < grid.ru; ++iu)
                marginal[static_cast<std::size_t>(iv) * grid.ru + iu] +=
                    grid.viewdep[grid.index(iu, iv, il)];
    return marginal;
}

}  // namespace psray
