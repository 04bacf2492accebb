// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "semistereo/image.hpp"

namespace semistereo {

// Read any PNG as 8-bit RGB (palette expanded, 16-bit narrowed, gray
// promoted, alpha dropped). Also accepts binary PPM (P6) by extension.
Image8 read_image(const std::filesystem::path& path);

// Write 8-bit RGB or grayscale PNG depending on image channel count (1 or 3).
void write_png(const std::filesystem::path& path, const Image8& img);

// 16-bit single-channel PNG, big-endian samples as PNG mandates.
void write_png16(const std::filesystem::path& path, const std::vector<std::uint16_t>& data,
                 int width, int height);
std::vector<std::uint16_t> read_png16(const std::filesystem::path& path, int* width,
                                      int* height);

}  // namespace semistereo
