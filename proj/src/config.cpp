// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/config.hpp"

#include "psray/errors.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace psray {

namespace {

using TomlValue = std::variant<std::string, double, bool, std::vector<double>>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& text, int line_no) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("config line " + std::to_string(line_no) + ": bad number '" + text + "'");
    }
    if (pos != text.size())
        throw ParseError("config line " + std::to_string(line_no) + ": bad number '" + text + "'");
    return value;
}

TomlValue parse_value(const std::string& text, int line_no) {
    if (text.empty()) throw ParseError("config line " + std::to_string(line_no) + ": missing value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            throw ParseError("config line " + std::to_string(line_no) + ": unterminated string");
        return text.substr(1, text.size() - 2);
    }
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.front() == '[') {
        if (text.back() != ']')
            throw ParseError("config line " + std::to_string(line_no) + ": unterminated array");
        std::vector<double> values;
        std::string inner = text.substr(1, text.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            values.push_back(parse_number(item, line_no));
        }
        return values;
    }
    return parse_number(text, line_no);
}

std::map<std::string, TomlValue> parse_toml(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open config: " + path);
    std::map<std::string, TomlValue> values;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("config line " + std::to_string(line_no) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2)) + ".";
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ParseError("config line " + std::to_string(line_no) + ": empty key");
        values[section + key] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return values;
}

class ConfigReader {
  public:
    explicit ConfigReader(std::map<std::string, TomlValue> values) : values_(std::move(values)) {}

    template <typename T>
    void get(const std::string& key, T& out) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        consumed_.insert(key);
        if constexpr (std::is_same_v<T, std::string> || std::is_same_v<T, bool> ||
                      std::is_same_v<T, std::vector<double>>) {
            if (auto* v = std::get_if<T>(&it->second)) {
                out = *v;
                return;
            }
        } else {
            if (auto* v = std::get_if<double>(&it->second)) {
                out = static_cast<T>(*v);
                return;
            }
        }
        throw ParseError("config key '" + key + "' has the wrong type");
    }

    void get(const std::string& key, Vec3i& out) {
        std::vector<double> values;
        get(key, values);
        if (values.empty()) return;
        if (values.size() != 3) throw ParseError("config key '" + key + "' needs 3 integers");
        for (int a = 0; a < 3; ++a) out[a] = static_cast<int>(values[a]);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values_)
            if (!consumed_.count(key)) throw ParseError("unknown config key: " + key);
    }

  private:
    std::map<std::string, TomlValue> values_;
    std::set<std::string> consumed_;
};

}  // namespace

void RunConfig::validate() const {
    if ((scene_resolution.array() < 1).any() || (camera_resolution.array() < 1).any())
        throw ParseError("grid resolutions must be >= 1");
    if (partition_factor < 1) throw ParseError("partition_factor must be >= 1");
    if (!(s > 0.0)) throw ParseError("s must be positive");
    if (refresh_interval < 1) throw ParseError("refresh_interval must be >= 1");
    if (total_steps < 1) throw ParseError("total_steps must be >= 1");
    if (ray_points < 1) throw ParseError("ray_points must be >= 1");
    if (!(boundary_radius > 0.0)) throw ParseError("boundary_radius must be positive");
    if (uniform_fractions.empty()) throw ParseError("uniform_fractions must not be empty");
    double prev = 0.0;
    for (double f : uniform_fractions) {
        if (f < 0.0 || f > 1.0 || f < prev)
            throw ParseError("uniform_fractions must be non-decreasing within [0, 1]");
        prev = f;
    }
}

RunConfig load_run_config(const std::string& path) {
    ConfigReader reader(parse_toml(path));
    RunConfig cfg;
    reader.get("scene", cfg.scene_path);
    reader.get("cameras", cfg.cameras_path);
    reader.get("boundary_radius", cfg.boundary_radius);
    reader.get("s", cfg.s);
    reader.get("partition_factor", cfg.partition_factor);
    reader.get("scene_resolution", cfg.scene_resolution);
    reader.get("camera_resolution", cfg.camera_resolution);
    reader.get("total_steps", cfg.total_steps);
    reader.get("refresh_interval", cfg.refresh_interval);
    reader.get("seed", cfg.seed);
    reader.get("view_dependency", cfg.view_dependency);
    reader.get("inclusive_transmittance", cfg.inclusive_transmittance);
    reader.get("density_scale", cfg.density_scale);
    reader.get("ray_points", cfg.ray_points);
    reader.get("loss.lambda1", cfg.loss.lambda1);
    reader.get("loss.lambda2", cfg.loss.lambda2);
    reader.get("loss.epsilon", cfg.loss.epsilon);
    reader.get("loss.beta", cfg.loss.beta);
    reader.get("loss.surf_weight", cfg.surf_weight);
    reader.get("schedule.uniform_fractions", cfg.uniform_fractions);
    reader.reject_unknown();
    cfg.loss.inclusive_transmittance = cfg.inclusive_transmittance;
    cfg.validate();

    // paths are relative to the config file
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (dir / p).string();
    };
    resolve(cfg.scene_path);
    resolve(cfg.cameras_path);
    return cfg;
}

}  // namespace psray
