// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/scene_io.hpp"

#include "psray/errors.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

namespace psray {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

Vec3 to_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) throw ParseError(what + " must be an array of 3 numbers");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

AnalyticSdf parse_shape(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sphere")
        return AnalyticSdf::sphere(to_vec3(j.at("center"), "sphere center"),
                                   j.at("radius").get<double>());
    if (type == "box")
        return AnalyticSdf::box(to_vec3(j.at("center"), "box center"),
                                to_vec3(j.at("half_extents"), "box half_extents"));
    if (type == "wall") {
        const int axis = j.at("axis").get<int>();
        if (axis < 0 || axis > 2) throw ParseError("wall axis must be 0, 1 or 2");
        return AnalyticSdf::wall(axis, j.at("position").get<double>(),
                                 j.at("thickness").get<double>());
    }
    throw ParseError("unknown shape type: " + type);
}

}  // namespace

std::vector<Camera> load_camera_rig(const std::string& path) {
    json j = load_json(path);
    if (!j.is_array() || j.empty()) throw ParseError("camera rig must be a non-empty array: " + path);
    std::vector<Camera> cameras;
    cameras.reserve(j.size());
    for (const auto& cj : j) {
        Camera cam;
        const auto& rot = cj.at("rotation");
        if (!rot.is_array() || rot.size() != 9)
            throw ParseError("camera rotation must be 9 numbers (row-major)");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) cam.rotation(r, c) = rot[r * 3 + c].get<double>();
        cam.center = to_vec3(cj.at("center"), "camera center");
        cam.fx = cj.at("fx").get<double>();
        cam.fy = cj.at("fy").get<double>();
        cam.cx = cj.at("cx").get<double>();
        cam.cy = cj.at("cy").get<double>();
        cam.width = cj.at("width").get<int>();
        cam.height = cj.at("height").get<int>();
        cam.validate();
        cameras.push_back(cam);
    }
    return cameras;
}

SceneDescription load_scene(const std::string& path) {
    json j = load_json(path);
    SceneDescription scene;

    const auto& bj = j.at("boundary");
    const std::string kind = bj.at("type").get<std::string>();
    if (kind == "sphere") {
        scene.boundary = SceneBoundary::sphere(bj.at("radius").get<double>());
    } else if (kind == "box") {
        scene.boundary = SceneBoundary::box(to_vec3(bj.at("min"), "boundary min"),
                                            to_vec3(bj.at("max"), "boundary max"));
    } else {
        throw ParseError("unknown boundary type: " + kind);
    }

    if (j.contains("shapes") && !j.at("shapes").empty()) {
        std::vector<AnalyticSdf> shapes;
        for (const auto& sj : j.at("shapes")) shapes.push_back(parse_shape(sj));
        scene.sdf = shapes.size() == 1 ? shapes.front() : AnalyticSdf::union_of(std::move(shapes));
    }

    if (j.contains("cameras")) {
        std::filesystem::path rig = j.at("cameras").get<std::string>();
        if (rig.is_relative()) rig = std::filesystem::path(path).parent_path() / rig;
        scene.camera_rig_path = rig.string();
    }
    return scene;
}

}  // namespace psray
