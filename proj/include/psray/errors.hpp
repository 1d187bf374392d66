// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace psray {

/// Point has non-positive camera-space depth and cannot be projected.
struct BehindCameraError : std::runtime_error {
    explicit BehindCameraError(const std::string& what) : std::runtime_error(what) {}
};

/// Image-space depth must be strictly positive.
struct InvalidDepthError : std::runtime_error {
    explicit InvalidDepthError(const std::string& what) : std::runtime_error(what) {}
};

/// A required ray/boundary intersection does not exist.
struct NoIntersectionError : std::runtime_error {
    explicit NoIntersectionError(const std::string& what) : std::runtime_error(what) {}
};

/// A distribution with zero total mass cannot be normalized or sampled.
struct DegenerateDistributionError : std::runtime_error {
    explicit DegenerateDistributionError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (rig, scene, config, grid dump).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psray
