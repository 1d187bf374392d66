// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/losses.hpp"

#include "psray/scene_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace psray {

std::vector<double> compute_alphas(const std::vector<double>& sdf_values, double s) {
    if (sdf_values.size() < 2)
        throw std::invalid_argument("compute_alphas needs at least two points");
    std::vector<double> alphas(sdf_values.size() - 1);
    for (std::size_t i = 0; i + 1 < sdf_values.size(); ++i) {
        const double prev = sigmoid_cdf(sdf_values[i], s);
        const double next = sigmoid_cdf(sdf_values[i + 1], s);
        alphas[i] = std::clamp((prev - next) / prev, 0.0, 1.0);
    }
    return alphas;
}

std::vector<double> compute_weights(const std::vector<double>& alphas, bool inclusive_product) {
    std::vector<double> weights(alphas.size());
    double transmittance = 1.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (inclusive_product) transmittance *= 1.0 - alphas[i];
        weights[i] = alphas[i] * transmittance;
        if (!inclusive_product) transmittance *= 1.0 - alphas[i];
    }
    return weights;
}

double near_surface_loss(const std::vector<RayEvaluation>& rays) {
    if (rays.empty()) throw std::invalid_argument("loss needs at least one ray");
    double total = 0.0;
    for (const auto& ray : rays) {
        if (ray.is_background) continue;
        for (std::size_t i = 0; i < ray.sdf_values.size(); ++i)
            if (ray.bands[i] == Band::Near) total += std::abs(ray.sdf_values[i]) * ray.weights[i];
    }
    return total / static_cast<double>(rays.size());
}

double empty_space_loss(const std::vector<RayEvaluation>& rays, double epsilon) {
    if (rays.empty()) throw std::invalid_argument("loss needs at least one ray");
    double total = 0.0;
    for (const auto& ray : rays) {
        if (ray.is_background) continue;
        for (std::size_t i = 0; i < ray.sdf_values.size(); ++i)
            if (ray.bands[i] == Band::Empty) {
                const double term = (ray.sdf_values[i] - epsilon) * ray.weights[i];
                total += term * term;
            }
    }
    return total / static_cast<double>(rays.size());
}

double background_loss(const std::vector<RayEvaluation>& rays, double beta) {
    if (rays.empty()) throw std::invalid_argument("loss needs at least one ray");
    double total = 0.0;
    for (const auto& ray : rays) {
        if (!ray.is_background) continue;
        for (std::size_t i = 0; i < ray.sdf_values.size(); ++i)
            total += std::exp(-beta * std::abs(ray.sdf_values[i])) * ray.weights[i];
    }
    return total / static_cast<double>(rays.size());
}

SurfaceLossReport total_surface_loss(const std::vector<RayEvaluation>& rays,
                                     const LossParams& params) {
    SurfaceLossReport report;
    report.near = near_surface_loss(rays);
    report.empty = empty_space_loss(rays, params.epsilon);
    report.background = background_loss(rays, params.beta);
    report.total = params.lambda1 * report.near + params.lambda2 * (report.empty + report.background);
    report.ray_count = rays.size();
    return report;
}

RayEvaluation evaluate_ray(const RaySample& ray, const SdfFn& sdf, double s,
                           const LossParams& params) {
    RayEvaluation eval;
    eval.is_background = ray.background;
    if (ray.points.empty()) return eval;

    std::vector<std::size_t> order(ray.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ray.points[a].t < ray.points[b].t; });

    eval.sdf_values.reserve(order.size());
    eval.bands.reserve(order.size());
    for (std::size_t idx : order) {
        eval.sdf_values.push_back(sdf(ray.points[idx].position));
        eval.bands.push_back(ray.points[idx].band);
    }
    if (eval.sdf_values.size() >= 2) {
        eval.weights =
            compute_weights(compute_alphas(eval.sdf_values, s), params.inclusive_transmittance);
    }
    eval.weights.resize(eval.sdf_values.size(), 0.0);
    return eval;
}

std::vector<RayEvaluation> evaluate_rays(const std::vector<RaySample>& rays, const SdfFn& sdf,
                                         double s, const LossParams& params) {
    std::vector<RayEvaluation> evals;
    evals.reserve(rays.size());
    for (const auto& ray : rays) evals.push_back(evaluate_ray(ray, sdf, s, params));
    return evals;
}

}  // namespace psray
