// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psray {

/// Writes an 8-bit grayscale PNG; pixels are row-major, row 0 on top.
void write_gray_png(const std::string& path, int width, int height,
                    const std::vector<uint8_t>& pixels);

/// Reads an 8-bit grayscale PNG written by write_gray_png.
std::vector<uint8_t> read_gray_png(const std::string& path, int& width, int& height);

}  // namespace psray
