// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "psray/geometry.hpp"
#include "psray/image_grid.hpp"
#include "psray/math.hpp"
#include "psray/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace psray {

// Factorized sampling tables for one normalized camera grid:
// marginal_u, then per-u rows of p(v|u), then per-(u,v) rows of
// p(lambda|u,v). Every stored row is normalized; an all-zero row marks a
// conditional with no mass (never reachable through sampling).
struct MarginalTables {
    CameraBounds bounds;
    int ru = 1, rv = 1, rl = 1;
    std::vector<double> marginal_u;       // ru
    std::vector<double> marginal_u_cdf;   // ru, last entry exactly 1
    std::vector<double> v_given_u;        // ru rows of rv
    std::vector<double> lambda_given_uv;  // ru*rv rows of rl

    const double* v_row(int iu) const { return &v_given_u[static_cast<std::size_t>(iu) * rv]; }
    const double* lambda_row(int iu, int iv) const {
        return &lambda_given_uv[(static_cast<std::size_t>(iu) * rv + iv) * rl];
    }
};

/// Builds the factorized tables; requires a normalized grid.
MarginalTables build_tables(const CameraGrid& grid);

// Draws n continuous (u, v, lambda) points from the tables by sequential
// inverse-transform sampling. Cells are uniform within their extents;
// conditional rows are linearly blended between the bracketing grid
// columns. Each draw uses an independent stream derived from (seed, i), so
// results do not depend on batching or thread count.
std::vector<ImageSpacePoint> sample_guided(const MarginalTables& tables, std::size_t n,
                                           uint64_t seed);

/// Single guided draw from an explicit stream (advances rng).
ImageSpacePoint sample_guided_one(const MarginalTables& tables, Pcg32& rng);

// Depth draw for a fixed pixel: interpolates p(lambda|u,v) at (u, v) and
// samples it. Returns nullopt when the interpolated conditional carries no
// mass (background pixel).
std::optional<double> sample_depth_for_pixel(const MarginalTables& tables, double u, double v,
                                             Pcg32& rng);

/// Fraction of rays sampled uniformly per training phase.
struct MixSchedule {
    std::vector<double> phase_fractions = {0.20, 0.40, 0.60, 0.80};
    long total_steps = 10000;

    void validate() const;
};

/// Uniform fraction at `step`; phases are equal length over total_steps.
double mix_fraction(const MixSchedule& schedule, long step);

enum class Band : uint8_t { Near, Empty };

struct RayPointSample {
    double t = 0.0;  // distance along the ray
    Band band = Band::Near;
};

// n draws from N(center, sigma^2) with sigma = pi / (sqrt(3) s), the normal
// approximation of the logistic of scale s. Points within 3 sigma of the
// center are Near, the rest Empty. Non-positive draws are redrawn (at most
// 100 attempts, then clamped to t_min).
std::vector<RayPointSample> sample_ray_points(double center, double s, int n, Pcg32& rng,
                                              double t_min = 1e-6);

/// Gaussian spread of the near-surface point distribution, pi / (sqrt(3) s).
inline double ray_point_sigma(double s) { return kPi / (std::sqrt(3.0) * s); }

enum class RaySource : uint8_t { Guided, Uniform };

struct RayPoint {
    Vec3 position;
    double t;
    Band band;
};

/// One sampled ray with its image-space coordinates and near-surface points.
struct RaySample {
    int camera_id = 0;
    RaySource source = RaySource::Guided;
    ImageSpacePoint coords;  // lambda is NaN for out-of-surface uniform picks
    double px = 0.0, py = 0.0;
    Ray ray{Vec3::Zero(), Vec3::UnitZ(), 0.0};
    bool background = false;  // sampled depth outside the scene boundary (or none)
    std::vector<RayPoint> points;
};

/// Which rays receive sampled points.
enum class PointAttachment {
    GuidedOnly,  // gaussian points on guided rays (sample export)
    ForLoss,     // gaussian on foreground rays, uniform in-boundary on background rays
};

struct BatchParams {
    long step = 0;
    std::size_t n_rays = 0;
    uint64_t seed = 0;
    double s = 50.0;
    int n_ray_points = 32;
    PointAttachment attachment = PointAttachment::GuidedOnly;
};

// Samples one batch: the first round(n * mix_fraction(step)) rays take the
// uniform path (pixel centers + conditional depth), the rest are guided.
// Each ray's camera is chosen uniformly. Per-ray derived seeds make the
// batch reproducible independent of threading.
std::vector<RaySample> sample_batch(const std::vector<Camera>& cameras,
                                    const std::vector<MarginalTables>& tables,
                                    const SceneBoundary& boundary, const MixSchedule& schedule,
                                    const BatchParams& params);

}  // namespace psray
