// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "semistereo/render.hpp"

namespace semistereo {

// On-disk arrangement of a generated dataset.
//  Middlebury: root/frame_NNNNNN/{im0.png, im1.png, disp0.pfm, occ0.png, calib.txt}
//  Kitti:      root/{image_2, image_3, disp_occ_0, occ_0, calib}/NNNNNN_10.*
// PFM is the primary disparity format; the 16-bit PNG encoding is optional
// (and the Kitti layout's default).
enum class LayoutStyle { Middlebury, Kitti };

struct FramePaths {
  std::filesystem::path left;
  std::filesystem::path right;
  std::filesystem::path disp_pfm;
  std::filesystem::path disp_png16;
  std::filesystem::path occlusion;
  std::filesystem::path calib;
};

struct DatasetLayout {
  std::filesystem::path root;
  LayoutStyle style = LayoutStyle::Middlebury;
  bool with_pfm = true;
  bool with_png16 = false;
  bool with_occlusion = true;
  bool with_calib = true;

  FramePaths paths(int frame) const;
};

// Disparity as 16-bit PNG, value = round(256 * d), 0 reserved for invalid.
// True zeros are clamped up to 1 (1/256 px). Disparities at or above 256 px
// do not fit and raise DisparityOverflowError.
void write_disparity_png16(const std::filesystem::path& path, const FloatMap& disp);
FloatMap read_disparity_png16(const std::filesystem::path& path);

// Rig intrinsics in the Middlebury calib.txt dialect. Numbers print in
// shortest round-trip form; baseline is in millimeters.
struct CalibInfo {
  double f_px = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double doffs = 0.0;
  double baseline_m = 0.0;
  int width = 0;
  int height = 0;
  double ndisp = 0.0;
};
void write_calib(const std::filesystem::path& path, const StereoRig& rig);
CalibInfo parse_calib(const std::filesystem::path& path);

// Create or reuse the output root. An existing non-empty root is only
// accepted when its manifest carries the same config hash and seed;
// anything else is refused rather than clobbered.
void prepare_output_root(const DatasetLayout& layout, std::uint64_t config_hash,
                         std::uint64_t seed);

void write_frame(const DatasetLayout& layout, const FrameSample& sample,
                 const StereoRig& rig);

// manifest.json at the dataset root: format tag, seed, config hash, frame
// count, per-frame seeds and relative paths, and the resolved config needed
// to regenerate any single frame. No timestamps, so regeneration is
// byte-identical.
void write_manifest(const DatasetLayout& layout, const nlohmann::json& resolved_config,
                    std::uint64_t config_hash, std::uint64_t seed, int frames, double fps,
                    const StereoRig& rig);
nlohmann::json read_manifest(const std::filesystem::path& root);

// Load a frame back from disk (images, disparity, occlusion; depth maps are
// not stored). Missing files raise MissingOutputError.
FrameSample read_pair(const DatasetLayout& layout, int frame);

}  // namespace semistereo
