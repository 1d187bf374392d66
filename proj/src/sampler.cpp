// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/sampler.hpp"

#include "psray/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psray {

namespace {

// Inverse-CDF draw from a non-negative weight row over [lo, hi]; the
// sampled coordinate is uniform within the chosen cell. `total` must be
// the row sum (> 0).
double sample_row(const double* row, int n, double total, double lo, double hi, double xi,
                  int* index_out = nullptr) {
    const double target = xi * total;
    double acc = 0.0;
    int i = 0;
    for (; i < n; ++i) {
        if (acc + row[i] > target) break;
        acc += row[i];
    }
    if (i == n) {  // xi ~ 1 landed past the last positive bin
        for (i = n - 1; i > 0 && row[i] <= 0.0; --i) {
        }
        acc = total - row[i];
    }
    const double frac = row[i] > 0.0 ? (target - acc) / row[i] : 0.5;
    if (index_out) *index_out = i;
    return lo + (i + std::min(frac, 0.9999999999999999)) * (hi - lo) / n;
}

// Bracketing cell centers and the blend weight for a continuous coordinate;
// clamps to a single column outside the first/last centers.
void bracket(double x, double lo, double hi, int n, int& i0, int& i1, double& w) {
    const double t = (x - lo) / (hi - lo) * n - 0.5;
    const double fl = std::floor(t);
    i0 = static_cast<int>(fl);
    w = t - fl;
    if (i0 < 0) {
        i0 = i1 = 0;
        w = 0.0;
    } else if (i0 >= n - 1) {
        i0 = i1 = n - 1;
        w = 0.0;
    } else {
        i1 = i0 + 1;
    }
}

double blend2(const double* a, const double* b, double w, int n, std::vector<double>& out) {
    out.resize(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = (1.0 - w) * a[i] + w * b[i];
        total += out[i];
    }
    return total;
}

double blend4(const double* r00, const double* r10, const double* r01, const double* r11,
              double wu, double wv, int n, std::vector<double>& out) {
    out.resize(n);
    const double w00 = (1.0 - wu) * (1.0 - wv), w10 = wu * (1.0 - wv);
    const double w01 = (1.0 - wu) * wv, w11 = wu * wv;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = w00 * r00[i] + w10 * r10[i] + w01 * r01[i] + w11 * r11[i];
        total += out[i];
    }
    return total;
}

double blended_lambda_row(const MarginalTables& t, double u, double v, std::vector<double>& out) {
    int iu0, iu1, iv0, iv1;
    double wu, wv;
    bracket(u, t.bounds.u_range.lo, t.bounds.u_range.hi, t.ru, iu0, iu1, wu);
    bracket(v, t.bounds.v_range.lo, t.bounds.v_range.hi, t.rv, iv0, iv1, wv);
    return blend4(t.lambda_row(iu0, iv0), t.lambda_row(iu1, iv0), t.lambda_row(iu0, iv1),
                  t.lambda_row(iu1, iv1), wu, wv, t.rl, out);
}

}  // namespace

MarginalTables build_tables(const CameraGrid& grid) {
    if (!grid.normalized) throw std::invalid_argument("build_tables requires a normalized grid");

    MarginalTables t;
    t.bounds = grid.bounds;
    t.ru = grid.ru;
    t.rv = grid.rv;
    t.rl = grid.rl;
    t.marginal_u.assign(grid.ru, 0.0);
    t.v_given_u.assign(static_cast<std::size_t>(grid.ru) * grid.rv, 0.0);
    t.lambda_given_uv.assign(grid.cell_count(), 0.0);

    // Joint sums per u column and per (u, v) column.
    std::vector<double> col_uv(static_cast<std::size_t>(grid.ru) * grid.rv, 0.0);
    for (int il = 0; il < grid.rl; ++il)
        for (int iv = 0; iv < grid.rv; ++iv)
            for (int iu = 0; iu < grid.ru; ++iu)
                col_uv[static_cast<std::size_t>(iu) * grid.rv + iv] +=
                    grid.viewdep[grid.index(iu, iv, il)];

    const double resolution_factor = 1.0 / (static_cast<double>(grid.rv) * grid.rl);
    double total = 0.0;
    for (int iu = 0; iu < grid.ru; ++iu) {
        double col = 0.0;
        for (int iv = 0; iv < grid.rv; ++iv) col += col_uv[static_cast<std::size_t>(iu) * grid.rv + iv];
        t.marginal_u[iu] = col * resolution_factor;
        total += t.marginal_u[iu];
    }
    if (!(total > 0.0)) throw DegenerateDistributionError("camera grid has zero total mass");
    for (double& m : t.marginal_u) m /= total;

    t.marginal_u_cdf.resize(grid.ru);
    double acc = 0.0;
    for (int iu = 0; iu < grid.ru; ++iu) {
        acc += t.marginal_u[iu];
        t.marginal_u_cdf[iu] = acc;
    }
    t.marginal_u_cdf[grid.ru - 1] = 1.0;

    for (int iu = 0; iu < grid.ru; ++iu) {
        const double col_u = t.marginal_u[iu];
        for (int iv = 0; iv < grid.rv; ++iv) {
            const double col = col_uv[static_cast<std::size_t>(iu) * grid.rv + iv];
            if (col_u > 0.0)
                t.v_given_u[static_cast<std::size_t>(iu) * grid.rv + iv] = col;
            if (col > 0.0) {
                double* row = &t.lambda_given_uv[(static_cast<std::size_t>(iu) * grid.rv + iv) * grid.rl];
                for (int il = 0; il < grid.rl; ++il)
                    row[il] = grid.viewdep[grid.index(iu, iv, il)] / col;
            }
        }
        // normalize the v row
        if (col_u > 0.0) {
            double* row = &t.v_given_u[static_cast<std::size_t>(iu) * grid.rv];
            double row_sum = 0.0;
            for (int iv = 0; iv < grid.rv; ++iv) row_sum += row[iv];
            if (row_sum > 0.0)
                for (int iv = 0; iv < grid.rv; ++iv) row[iv] /= row_sum;
        }
    }
    return t;
}

ImageSpacePoint sample_guided_one(const MarginalTables& t, Pcg32& rng) {
    // u from the first marginal
    const double* mu = t.marginal_u.data();
    int iu_cell = 0;
    const double u = sample_row(mu, t.ru, 1.0, t.bounds.u_range.lo, t.bounds.u_range.hi,
                                rng.next_double(), &iu_cell);

    // v from the blended conditional at u
    int iu0, iu1;
    double wu;
    bracket(u, t.bounds.u_range.lo, t.bounds.u_range.hi, t.ru, iu0, iu1, wu);
    std::vector<double> row;
    double row_total = blend2(t.v_row(iu0), t.v_row(iu1), wu, t.rv, row);
    if (!(row_total > 0.0))
        throw DegenerateDistributionError("interpolated v-conditional has zero mass");
    const double v = sample_row(row.data(), t.rv, row_total, t.bounds.v_range.lo,
                                t.bounds.v_range.hi, rng.next_double());

    // lambda from the bilinear-blended conditional at (u, v)
    std::vector<double> lrow;
    double lrow_total = blended_lambda_row(t, u, v, lrow);
    if (!(lrow_total > 0.0))
        throw DegenerateDistributionError("interpolated lambda-conditional has zero mass");
    const double lambda = sample_row(lrow.data(), t.rl, lrow_total, t.bounds.lambda_range.lo,
                                     t.bounds.lambda_range.hi, rng.next_double());
    return {u, v, lambda};
}

std::vector<ImageSpacePoint> sample_guided(const MarginalTables& tables, std::size_t n,
                                           uint64_t seed) {
    std::vector<ImageSpacePoint> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        Pcg32 rng(mix_seed(seed, i));
        samples[i] = sample_guided_one(tables, rng);
    }
    return samples;
}

std::optional<double> sample_depth_for_pixel(const MarginalTables& tables, double u, double v,
                                             Pcg32& rng) {
    std::vector<double> lrow;
    double total = blended_lambda_row(tables, u, v, lrow);
    if (!(total > 0.0)) return std::nullopt;
    return sample_row(lrow.data(), tables.rl, total, tables.bounds.lambda_range.lo,
                      tables.bounds.lambda_range.hi, rng.next_double());
}

void MixSchedule::validate() const {
    if (phase_fractions.empty()) throw std::invalid_argument("schedule needs at least one phase");
    if (total_steps < 1) throw std::invalid_argument("total_steps must be positive");
    double prev = 0.0;
    for (double f : phase_fractions) {
        if (f < 0.0 || f > 1.0 || f < prev)
            throw std::invalid_argument("phase fractions must be non-decreasing within [0, 1]");
        prev = f;
    }
}

double mix_fraction(const MixSchedule& schedule, long step) {
    schedule.validate();
    if (step < 0 || step > schedule.total_steps)
        throw std::invalid_argument("step outside [0, total_steps]");
    const long phases = static_cast<long>(schedule.phase_fractions.size());
    long idx = step * phases / schedule.total_steps;
    idx = std::min(idx, phases - 1);
    return schedule.phase_fractions[static_cast<std::size_t>(idx)];
}

std::vector<RayPointSample> sample_ray_points(double center, double s, int n, Pcg32& rng,
                                              double t_min) {
    if (!(s > 0.0)) throw std::invalid_argument("logistic scale must be positive");
    const double sigma = ray_point_sigma(s);
    const double band_half_width = 3.0 * sigma;
    std::vector<RayPointSample> points(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 100; ++attempt) {
            t = center + sigma * rng.next_gaussian();
            if (t > 0.0) {
                ok = true;
                break;
            }
        }
        if (!ok) t = t_min;
        points[i].t = t;
        points[i].band = std::abs(t - center) <= band_half_width ? Band::Near : Band::Empty;
    }
    return points;
}

namespace {

void attach_gaussian_points(RaySample& ray, double s, int n, Pcg32& rng) {
    auto ts = sample_ray_points(ray.ray.depth, s, n, rng);
    ray.points.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ray.points[i].t = ts[i].t;
        ray.points[i].band = ts[i].band;
        ray.points[i].position = ray.ray.origin + ts[i].t * ray.ray.direction;
    }
}

// Uniformly spaced jittered points over the ray's span inside the boundary;
// loss evaluation needs foreground points even for background rays.
void attach_uniform_points(RaySample& ray, const SceneBoundary& boundary, int n, Pcg32& rng) {
    double t0 = 0.0, t1 = 0.0;
    if (!boundary.intersect_ray(ray.ray.origin, ray.ray.direction, t0, t1) || t1 <= 0.0) return;
    t0 = std::max(t0, 0.0);
    ray.points.resize(static_cast<std::size_t>(n));
    const double width = (t1 - t0) / n;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (i + rng.next_double()) * width;
        ray.points[i].t = t;
        ray.points[i].band = Band::Empty;
        ray.points[i].position = ray.ray.origin + t * ray.ray.direction;
    }
}

}  // namespace

std::vector<RaySample> sample_batch(const std::vector<Camera>& cameras,
                                    const std::vector<MarginalTables>& tables,
                                    const SceneBoundary& boundary, const MixSchedule& schedule,
                                    const BatchParams& params) {
    if (cameras.empty() || cameras.size() != tables.size())
        throw std::invalid_argument("need one table set per camera");

    const double fraction = mix_fraction(schedule, params.step);
    const std::size_t n_uniform =
        static_cast<std::size_t>(std::lround(static_cast<double>(params.n_rays) * fraction));

    std::vector<RaySample> batch(params.n_rays);
    for (std::size_t i = 0; i < params.n_rays; ++i) {
        Pcg32 rng(mix_seed(params.seed, i));
        RaySample& ray = batch[i];
        const std::size_t cam_idx =
            std::min(static_cast<std::size_t>(rng.next_double() * cameras.size()),
                     cameras.size() - 1);
        const Camera& cam = cameras[cam_idx];
        const MarginalTables& table = tables[cam_idx];
        ray.camera_id = static_cast<int>(cam_idx);

        if (i < n_uniform) {
            ray.source = RaySource::Uniform;
            const int ix = std::min(static_cast<int>(rng.next_double() * cam.width), cam.width - 1);
            const int iy = std::min(static_cast<int>(rng.next_double() * cam.height), cam.height - 1);
            ray.px = ix + 0.5;
            ray.py = iy + 0.5;
            pixel_to_image_point(cam, ray.px, ray.py, ray.coords.u, ray.coords.v);
            std::optional<double> lambda =
                sample_depth_for_pixel(table, ray.coords.u, ray.coords.v, rng);
            if (lambda) {
                ray.coords.lambda = *lambda;
                ray.ray = ray_from_sample(cam, ray.coords);
                ray.background = !boundary.contains(unproject(cam, ray.coords));
            } else {
                // out-of-surface pixel: direction is depth-independent
                ray.coords.lambda = std::numeric_limits<double>::quiet_NaN();
                ray.ray = ray_from_sample(cam, {ray.coords.u, ray.coords.v, 1.0});
                ray.ray.depth = std::numeric_limits<double>::quiet_NaN();
                ray.background = true;
            }
        } else {
            ray.source = RaySource::Guided;
            ray.coords = sample_guided_one(table, rng);
            image_point_to_pixel(cam, ray.coords.u, ray.coords.v, ray.px, ray.py);
            ray.ray = ray_from_sample(cam, ray.coords);
            ray.background = !boundary.contains(unproject(cam, ray.coords));
        }

        const bool has_depth = std::isfinite(ray.coords.lambda);
        switch (params.attachment) {
            case PointAttachment::GuidedOnly:
                if (ray.source == RaySource::Guided)
                    attach_gaussian_points(ray, params.s, params.n_ray_points, rng);
                break;
            case PointAttachment::ForLoss:
                if (has_depth && !ray.background)
                    attach_gaussian_points(ray, params.s, params.n_ray_points, rng);
                else
                    attach_uniform_points(ray, boundary, params.n_ray_points, rng);
                break;
        }
    }
    return batch;
}

}  // namespace psray
