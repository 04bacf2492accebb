// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "semistereo/image.hpp"
#include "semistereo/rng.hpp"
#include "semistereo/scene.hpp"

namespace semistereo {

// A source photograph or rendering that patches are cropped from.
struct SourceImage {
  Image8 pixels;          // 3-channel
  std::string origin_id;  // filename or synthetic tag, recorded in provenance
};

struct PatchSpec {
  int count = 0;
  double side_frac_min = 0.2;  // crop side as a fraction of min(width, height)
  double side_frac_max = 0.6;
  int out_side_px = 256;       // patches are resampled to this square size

  void validate() const;
};

struct CropRect {
  int x = 0;
  int y = 0;
  int side = 0;
};

struct PatchProvenance {
  std::string origin_id;
  CropRect rect;
};

// Ordered set of square texture patches. Order is part of the dataset
// identity: object k of a scene references patches by index.
struct PatchSequence {
  int side_px = 0;
  std::vector<Image8> patches;
  std::vector<PatchProvenance> provenance;

  int count() const { return static_cast<int>(patches.size()); }
};

// Crop `count` random squares from the sources and resample each to the
// output side with an area (box) filter. Draw order per patch is fixed:
// source index, side fraction, x, y.
PatchSequence extract_patches(const std::vector<SourceImage>& sources,
                              const PatchSpec& spec, RandomStream& rng);

// Box-filter resample of a square crop to out_side x out_side.
Image8 resample_area(const Image8& src, int x0, int y0, int side, int out_side);

// Give every object a uniformly drawn patch reference. Background instances
// draw first, then spawned objects, one draw each in index order.
Scene assign_textures(Scene scene, const PatchSequence& patches, RandomStream& rng);

// UV tiling factor for an object so its texel footprint on screen lands in
// [1, 2] pixels at spawn depth. The raw factor is the screen-space extent of
// the longer edge of the largest bounding-box face divided by the patch
// side, snapped down to a power of two and clamped to [0.25, 64].
double compute_uv_scale(const Eigen::Vector3d& scaled_bbox_size, double patch_side_px,
                        double depth_m, const StereoRig& rig);

enum class Filter { Nearest, Bilinear };

// Sample a patch at (u, v) with wrap-around tiling. v indexes rows from the
// top. Bilinear places texel centers at (i + 0.5) / side so integer texel
// centers reproduce stored values exactly; results round half away from zero.
std::array<std::uint8_t, 3> sample_texture(const Image8& patch, double u, double v,
                                           Filter filter);

// Cache a patch sequence as one vertical PNG strip plus a JSON provenance
// index, and load it back.
void save_patch_strip(const PatchSequence& seq, const std::filesystem::path& png_path,
                      const std::filesystem::path& index_path);
PatchSequence load_patch_strip(const std::filesystem::path& png_path,
                               const std::filesystem::path& index_path);

}  // namespace semistereo
