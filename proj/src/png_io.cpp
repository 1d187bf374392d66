// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/png_io.hpp"

#include "psray/errors.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace psray {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

}  // namespace

void write_gray_png(const std::string& path, int width, int height,
                    const std::vector<uint8_t>& pixels) {
    if (pixels.size() != static_cast<std::size_t>(width) * height)
        throw ParseError("pixel buffer size does not match image size");
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw ParseError("cannot open PNG for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw ParseError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw ParseError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ParseError("libpng error while writing " + path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int row = 0; row < height; ++row)
        png_write_row(png, const_cast<png_bytep>(pixels.data() + static_cast<std::size_t>(row) * width));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<uint8_t> read_gray_png(const std::string& path, int& width, int& height) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw ParseError("cannot open PNG: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw ParseError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ParseError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError("libpng error while reading " + path);
    }
    png_init_io(png, file.get());
    png_read_info(png, info);
    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY || png_get_bit_depth(png, info) != 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError("expected an 8-bit grayscale PNG: " + path);
    }
    std::vector<uint8_t> pixels(static_cast<std::size_t>(width) * height);
    for (int row = 0; row < height; ++row)
        png_read_row(png, pixels.data() + static_cast<std::size_t>(row) * width, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return pixels;
}

}  // namespace psray
