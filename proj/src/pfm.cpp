// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/pfm.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>

#include "semistereo/errors.hpp"

namespace semistereo {

void write_pfm(const std::filesystem::path& path, const FloatMap& map) {
  if (map.width <= 0 || map.height <= 0)
    throw ValidationError("write_pfm: empty map");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "Pf\n" << map.width << " " << map.height << "\n-1.0\n";
  // Bottom row first, samples packed little-endian regardless of host.
  std::vector<std::uint8_t> row(static_cast<std::size_t>(map.width) * 4);
  for (int y = map.height - 1; y >= 0; --y) {
    for (int x = 0; x < map.width; ++x) {
      const auto bits = std::bit_cast<std::uint32_t>(map.at(x, y));
      row[4 * x + 0] = static_cast<std::uint8_t>(bits);
      row[4 * x + 1] = static_cast<std::uint8_t>(bits >> 8);
      row[4 * x + 2] = static_cast<std::uint8_t>(bits >> 16);
      row[4 * x + 3] = static_cast<std::uint8_t>(bits >> 24);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("short write to " + path.string());
}

FloatMap read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  in >> magic;
  if (magic == "PF")
    throw PfmParseError(path.string() + ": color PFM is not supported");
  if (magic != "Pf") throw PfmParseError(path.string() + ": not a PFM file");
  long long w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  if (!in || w <= 0 || h <= 0)
    throw PfmParseError(path.string() + ": bad dimensions");
  if (scale == 0.0) throw PfmParseError(path.string() + ": zero scale");
  in.get();  // single whitespace byte separating header and raster

  FloatMap map(static_cast<int>(w), static_cast<int>(h));
  const bool big_endian = scale > 0.0;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 4);
  for (int y = map.height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (in.gcount() != static_cast<std::streamsize>(row.size()))
      throw PfmParseError(path.string() + ": truncated raster");
    for (int x = 0; x < map.width; ++x) {
      std::uint32_t bits;
      if (big_endian)
        bits = (std::uint32_t(row[4 * x]) << 24) | (std::uint32_t(row[4 * x + 1]) << 16) |
               (std::uint32_t(row[4 * x + 2]) << 8) | std::uint32_t(row[4 * x + 3]);
      else
        bits = std::uint32_t(row[4 * x]) | (std::uint32_t(row[4 * x + 1]) << 8) |
               (std::uint32_t(row[4 * x + 2]) << 16) | (std::uint32_t(row[4 * x + 3]) << 24);
      map.at(x, y) = std::bit_cast<float>(bits);
    }
  }
  return map;
}

}  // namespace semistereo
