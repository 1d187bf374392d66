// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/export.hpp"
#include "psray/losses.hpp"
#include "psray/parallel.hpp"
#include "psray/pipeline.hpp"
#include "psray/testbed.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace psray;

// exit codes: 1 usage, 2 config/input, 3 missing artifacts, 4 bad reference
struct MissingArtifact : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadReference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config_path;
    std::string grids_dir = "grids";
    int threads = 0;  // 0: PS_SAMPLER_THREADS env, then hardware
    long step = 0;
    bool no_view_dependency = false;
    std::string seed_override;  // empty: use the config seed
};

int effective_threads(const CommonOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    if (const char* env = std::getenv("PS_SAMPLER_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return resolve_threads(0);
}

RunConfig load_config(const CommonOptions& opts) {
    RunConfig cfg = load_run_config(opts.config_path);
    if (opts.no_view_dependency) cfg.view_dependency = false;
    if (!opts.seed_override.empty()) cfg.seed = std::strtoull(opts.seed_override.c_str(), nullptr, 10);
    return cfg;
}

std::string camera_grid_path(const std::string& dir, int camera_id) {
    char name[32];
    std::snprintf(name, sizeof(name), "camera_%03d.psgd", camera_id);
    return (fs::path(dir) / name).string();
}

std::string scene_grid_path(const std::string& dir) {
    return (fs::path(dir) / "scene.psgd").string();
}

std::vector<MarginalTables> load_tables(const ScenePipeline& pipeline, const std::string& dir) {
    std::vector<MarginalTables> tables;
    tables.reserve(pipeline.cameras.size());
    for (std::size_t i = 0; i < pipeline.cameras.size(); ++i) {
        const std::string path = camera_grid_path(dir, static_cast<int>(i));
        if (!fs::exists(path)) throw MissingArtifact("camera grid not built: " + path);
        tables.push_back(build_tables(camera_grid_from_dump(read_grid_dump(path), static_cast<int>(i))));
    }
    return tables;
}

// --sdf accepts a literal path or a pattern with "{refresh}", replaced by
// floor(step / refresh_interval) so grids only change at refresh boundaries.
std::string resolve_sdf_path(const std::string& pattern, long step, long refresh_interval) {
    const std::string token = "{refresh}";
    std::string path = pattern;
    const std::size_t pos = path.find(token);
    if (pos != std::string::npos)
        path.replace(pos, token.size(), std::to_string(step / refresh_interval));
    return path;
}

int cmd_build(const CommonOptions& opts, const std::string& sdf_pattern) {
    RunConfig cfg = load_config(opts);
    const std::string sdf_path =
        sdf_pattern.empty() ? "" : resolve_sdf_path(sdf_pattern, opts.step, cfg.refresh_interval);
    ScenePipeline pipeline = load_pipeline(cfg, sdf_path);
    const int threads = effective_threads(opts);

    fs::create_directories(opts.grids_dir);
    const auto t0 = std::chrono::steady_clock::now();
    SceneGrid scene = build_scene(pipeline, cfg, threads);
    write_grid_dump(scene_grid_path(opts.grids_dir), scene_grid_to_dump(scene));

    std::vector<CameraGrid> grids(pipeline.cameras.size());
    std::vector<std::string> warnings(pipeline.cameras.size());
    parallel_for(pipeline.cameras.size(), threads, [&](std::size_t i) {
        CameraBounds bounds = compute_bounds(pipeline.cameras[i], pipeline.boundary);
        CameraGrid grid = interpolate_camera_grid(scene, pipeline.cameras[i], bounds,
                                                  cfg.camera_resolution, cfg.partition_factor, 1);
        grid.camera_id = static_cast<int>(i);
        if (grid.empty()) warnings[i] = "warning: camera " + std::to_string(i) + " sees no scene mass";
        if (cfg.view_dependency)
            apply_view_dependency(grid, cfg.density_scale, cfg.inclusive_transmittance);
        else
            disable_view_dependency(grid);
        grids[i] = std::move(grid);
    });
    for (const auto& w : warnings)
        if (!w.empty()) std::cerr << w << "\n";

    for (std::size_t i = 0; i < grids.size(); ++i) {
        const double mass = grids[i].raw_total();
        normalize(grids[i]);  // throws DegenerateDistributionError on empty frustum
        write_grid_dump(camera_grid_path(opts.grids_dir, static_cast<int>(i)),
                        camera_grid_to_dump(grids[i]));
        std::cout << "camera " << i << ": raw mass " << format_double(mass) << "\n";
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    std::cout << "built 1 scene grid + " << grids.size() << " camera grids in "
              << format_double(elapsed.count()) << " s\n";
    return 0;
}

int cmd_sample(const CommonOptions& opts, std::size_t n_rays, const std::string& out_path,
               const std::string& points_path) {
    RunConfig cfg = load_config(opts);
    ScenePipeline pipeline = load_pipeline(cfg);
    std::vector<MarginalTables> tables = load_tables(pipeline, opts.grids_dir);

    BatchParams params;
    params.step = opts.step;
    params.n_rays = n_rays;
    params.seed = cfg.seed;
    params.s = cfg.s;
    params.n_ray_points = cfg.ray_points;
    params.attachment = PointAttachment::GuidedOnly;

    std::vector<RaySample> batch =
        sample_batch(pipeline.cameras, tables, pipeline.boundary, schedule_from_config(cfg), params);
    write_samples_csv(out_path, batch);
    if (!points_path.empty()) write_ray_points_csv(points_path, batch);

    std::size_t uniform = 0;
    for (const auto& ray : batch)
        if (ray.source == RaySource::Uniform) ++uniform;
    std::cout << "sampled " << batch.size() << " rays (" << uniform << " uniform, "
              << batch.size() - uniform << " guided) -> " << out_path << "\n";
    return 0;
}

int cmd_loss(const CommonOptions& opts, std::size_t n_rays, const std::string& out_path) {
    RunConfig cfg = load_config(opts);
    ScenePipeline pipeline = load_pipeline(cfg);
    std::vector<MarginalTables> tables = load_tables(pipeline, opts.grids_dir);

    BatchParams params;
    params.step = opts.step;
    params.n_rays = n_rays;
    params.seed = cfg.seed;
    params.s = cfg.s;
    params.n_ray_points = cfg.ray_points;
    params.attachment = PointAttachment::ForLoss;

    std::vector<RaySample> batch =
        sample_batch(pipeline.cameras, tables, pipeline.boundary, schedule_from_config(cfg), params);
    std::vector<RayEvaluation> evals = evaluate_rays(batch, pipeline.sdf, cfg.s, cfg.loss);
    SurfaceLossReport report = total_surface_loss(evals, cfg.loss);

    const std::string json = loss_report_to_json(report, cfg.loss, cfg.surf_weight);
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        write_loss_report_json(out_path, report, cfg.loss, cfg.surf_weight);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_bench(const CommonOptions& opts) {
    RunConfig cfg = load_config(opts);
    ScenePipeline pipeline = load_pipeline(cfg);
    SceneGrid scene = build_scene(pipeline, cfg, effective_threads(opts));
    CameraBounds bounds = compute_bounds(pipeline.cameras.at(0), pipeline.boundary);

    double seconds[3] = {0, 0, 0};
    const int factors[3] = {1, 2, 4};
    for (int i = 0; i < 3; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        CameraGrid grid = interpolate_camera_grid(scene, pipeline.cameras[0], bounds,
                                                  cfg.camera_resolution, factors[i], 1);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        seconds[i] = dt.count();
        std::printf("F=%d: %.3f s (grid mass %g)\n", factors[i], seconds[i], grid.raw_total());
    }
    const double r21 = seconds[1] / seconds[0];
    const double r42 = seconds[2] / seconds[1];
    std::printf("ratio F=2/F=1: %.2f\n", r21);
    const bool ok = r42 >= 4.0 && r42 <= 16.0;
    std::printf("ratio F=4/F=2: %.2f (cost should grow ~F^3, within [4, 16]): %s\n", r42,
                ok ? "PASS" : "FAIL");
    return 0;
}

CameraGrid load_camera_grid_for_export(const CommonOptions& opts, const RunConfig& cfg,
                                       int camera_id) {
    ScenePipeline pipeline = load_pipeline(cfg);
    if (camera_id < 0 || static_cast<std::size_t>(camera_id) >= pipeline.cameras.size())
        throw BadReference("unknown camera id: " + std::to_string(camera_id));
    const std::string path = camera_grid_path(opts.grids_dir, camera_id);
    if (!fs::exists(path)) throw BadReference("camera grid not built: " + path);
    return camera_grid_from_dump(read_grid_dump(path), camera_id);
}

int cmd_export_heatmap(const CommonOptions& opts, int camera_id, const std::string& out_path) {
    RunConfig cfg = load_config(opts);
    CameraGrid grid = load_camera_grid_for_export(opts, cfg, camera_id);
    write_heatmap_png(out_path, grid);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_export_csv(const CommonOptions& opts, int camera_id, const std::string& out_path) {
    RunConfig cfg = load_config(opts);
    CameraGrid grid = load_camera_grid_for_export(opts, cfg, camera_id);
    write_grid_csv(out_path, grid);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "run configuration (TOML)")->required();
    cmd->add_option("--grids", opts.grids_dir, "grid artifact directory (default: grids)");
    cmd->add_option("--threads", opts.threads, "worker threads (default: PS_SAMPLER_THREADS or all cores)");
    cmd->add_option("--step", opts.step, "training step (default: 0)");
    cmd->add_flag("--no-view-dependency", opts.no_view_dependency,
                  "skip transmittance weighting (ablation)");
    cmd->add_option("--seed", opts.seed_override, "override config seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probability-guided ray sampler for neural implicit surface rendering"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string sdf_pattern;
    std::size_t n_rays = 1024;
    std::string out_path;
    std::string points_path;
    int camera_id = 0;

    auto* grids = app.add_subcommand("grids", "grid construction");
    grids->require_subcommand(1);
    auto* build = grids->add_subcommand("build", "build scene + camera grids and dump them");
    add_common(build, opts);
    build->add_option("--sdf", sdf_pattern,
                      "voxel SDF dump path; may contain {refresh} for floor(step/refresh_interval)");

    auto* sample = app.add_subcommand("sample", "ray sampling");
    sample->require_subcommand(1);
    auto* rays = sample->add_subcommand("rays", "sample a ray batch to CSV");
    add_common(rays, opts);
    rays->add_option("--rays", n_rays, "batch size")->required();
    rays->add_option("--out", out_path, "samples CSV path")->required();
    rays->add_option("--points-out", points_path, "ray point CSV path (optional)");

    auto* loss = app.add_subcommand("loss", "loss evaluation");
    loss->require_subcommand(1);
    auto* eval = loss->add_subcommand("eval", "sample a batch and report surface losses as JSON");
    add_common(eval, opts);
    eval->add_option("--rays", n_rays, "batch size")->required();
    eval->add_option("--out", out_path, "report path (default: stdout)");

    auto* bench = app.add_subcommand("bench", "benchmarks");
    bench->require_subcommand(1);
    auto* interp = bench->add_subcommand("interp", "time grid interpolation at F = 1, 2, 4");
    add_common(interp, opts);

    auto* exp = app.add_subcommand("export", "grid visualization exports");
    exp->require_subcommand(1);
    auto* heatmap = exp->add_subcommand("heatmap", "grayscale PNG of the (u, v) marginal");
    add_common(heatmap, opts);
    heatmap->add_option("--camera", camera_id, "camera id")->required();
    heatmap->add_option("--out", out_path, "PNG path")->required();
    auto* csv = exp->add_subcommand("csv", "full grid CSV");
    add_common(csv, opts);
    csv->add_option("--camera", camera_id, "camera id")->required();
    csv->add_option("--out", out_path, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (build->parsed()) return cmd_build(opts, sdf_pattern);
        if (rays->parsed()) return cmd_sample(opts, n_rays, out_path, points_path);
        if (eval->parsed()) return cmd_loss(opts, n_rays, out_path);
        if (interp->parsed()) return cmd_bench(opts);
        if (heatmap->parsed()) return cmd_export_heatmap(opts, camera_id, out_path);
        if (csv->parsed()) return cmd_export_csv(opts, camera_id, out_path);
    } catch (const MissingArtifact& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BadReference& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
