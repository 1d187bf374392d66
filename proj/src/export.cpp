// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/export.hpp"

#include "psray/errors.hpp"
#include "psray/png_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace psray {

std::string format_double(double value) {
    char buf[40];
    auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open file for writing: " + path);
    return os;
}

}  // namespace

void write_samples_csv(const std::string& path, const std::vector<RaySample>& rays) {
    std::ofstream os = open_out(path);
    os << "camera_id,source,u,v,lambda,px,py,ox,oy,oz,dx,dy,dz\n";
    for (const auto& ray : rays) {
        os << ray.camera_id << ',' << (ray.source == RaySource::Guided ? "guided" : "uniform")
           << ',' << format_double(ray.coords.u) << ',' << format_double(ray.coords.v) << ','
           << format_double(ray.coords.lambda) << ',' << format_double(ray.px) << ','
           << format_double(ray.py);
        for (int a = 0; a < 3; ++a) os << ',' << format_double(ray.ray.origin[a]);
        for (int a = 0; a < 3; ++a) os << ',' << format_double(ray.ray.direction[a]);
        os << '\n';
    }
}

void write_ray_points_csv(const std::string& path, const std::vector<RaySample>& rays) {
    std::ofstream os = open_out(path);
    os << "ray_index,t,band\n";
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (const auto& point : rays[i].points)
            os << i << ',' << format_double(point.t) << ','
               << (point.band == Band::Near ? "near" : "empty") << '\n';
}

void write_grid_csv(const std::string& path, const CameraGrid& grid) {
    std::ofstream os = open_out(path);
    os << "u_idx,v_idx,lambda_idx,p\n";
    for (int il = 0; il < grid.rl; ++il)
        for (int iv = 0; iv < grid.rv; ++iv)
            for (int iu = 0; iu < grid.ru; ++iu)
                os << iu << ',' << iv << ',' << il << ','
                   << format_double(grid.viewdep[grid.index(iu, iv, il)]) << '\n';
}

void write_heatmap_png(const std::string& path, const CameraGrid& grid) {
    std::vector<double> marginal = uv_marginal(grid);
    const double peak = marginal.empty() ? 0.0 : *std::max_element(marginal.begin(), marginal.end());
    std::vector<uint8_t> pixels(marginal.size(), 0);
    if (peak > 0.0)
        for (std::size_t i = 0; i < marginal.size(); ++i)
            pixels[i] = static_cast<uint8_t>(std::lround(255.0 * marginal[i] / peak));
    write_gray_png(path, grid.ru, grid.rv, pixels);
}

std::string loss_report_to_json(const SurfaceLossReport& report, const LossParams& params,
                                double surf_weight) {
    nlohmann::json j;
    j["near"] = report.near;
    j["empty"] = report.empty;
    j["background"] = report.background;
    j["total"] = report.total;
    j["rays"] = report.ray_count;
    j["params"] = {{"lambda1", params.lambda1},
                   {"lambda2", params.lambda2},
                   {"epsilon", params.epsilon},
                   {"beta", params.beta},
                   {"surf_weight", surf_weight}};
    return j.dump(2);
}

void write_loss_report_json(const std::string& path, const SurfaceLossReport& report,
                            const LossParams& params, double surf_weight) {
    std::ofstream os = open_out(path);
    os << loss_report_to_json(report, params, surf_weight) << '\n';
}

}  // namespace psray
