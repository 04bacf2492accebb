// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "semistereo/image.hpp"

namespace semistereo {

// Grayscale PFM ("Pf"). Written header is exactly "Pf\n<W> <H>\n-1.0\n"
// (little-endian scale), raster bottom row first. Values round-trip
// bit-exactly, including infinities.
void write_pfm(const std::filesystem::path& path, const FloatMap& map);

// Reads both little-endian (scale < 0) and big-endian (scale > 0) files.
FloatMap read_pfm(const std::filesystem::path& path);

}  // namespace semistereo
