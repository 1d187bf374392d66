// Copyright 2026 the psray authors
// SPDX-License-Identifier: Apache-2.0

#include "psray/grid_io.hpp"

#include "psray/errors.hpp"

#include <cstring>
#include <fstream>

namespace psray {

namespace {

constexpr char kMagic[4] = {'P', 'S', 'G', 'D'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T value;
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is) throw ParseError("truncated grid dump");
    return value;
}

}  // namespace

void write_grid_dump(const std::string& path, const GridDump& dump) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot open grid dump for writing: " + path);
    os.write(kMagic, 4);
    write_raw(os, kVersion);
    write_raw(os, static_cast<uint8_t>(dump.kind));
    for (int a = 0; a < 3; ++a) write_raw(os, static_cast<uint32_t>(dump.dims[a]));
    for (int a = 0; a < 3; ++a) write_raw(os, dump.bounds_lo[a]);
    for (int a = 0; a < 3; ++a) write_raw(os, dump.bounds_hi[a]);
    os.write(reinterpret_cast<const char*>(dump.payload.data()),
             static_cast<std::streamsize>(dump.payload.size() * sizeof(float)));
    if (!os) throw ParseError("failed writing grid dump: " + path);
}

GridDump read_grid_dump(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open grid dump: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw ParseError("bad grid dump magic: " + path);
    uint32_t version = read_raw<uint32_t>(is);
    if (version != kVersion) throw ParseError("unsupported grid dump version");
    GridDump dump;
    uint8_t kind = read_raw<uint8_t>(is);
    if (kind > 1) throw ParseError("unknown grid dump kind");
    dump.kind = static_cast<GridKind>(kind);
    size_t count = 1;
    for (int a = 0; a < 3; ++a) {
        uint32_t d = read_raw<uint32_t>(is);
        if (d == 0) throw ParseError("grid dump has zero dimension");
        dump.dims[a] = static_cast<int>(d);
        count *= d;
    }
    for (int a = 0; a < 3; ++a) dump.bounds_lo[a] = read_raw<double>(is);
    for (int a = 0; a < 3; ++a) dump.bounds_hi[a] = read_raw<double>(is);
    dump.payload.resize(count);
    is.read(reinterpret_cast<char*>(dump.payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (!is) throw ParseError("truncated grid dump payload: " + path);
    return dump;
}

}  // namespace psray
