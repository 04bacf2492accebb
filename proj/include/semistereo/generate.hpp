// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "semistereo/config.hpp"
#include "semistereo/dataset.hpp"
#include "semistereo/metrics.hpp"
#include "semistereo/render.hpp"

namespace semistereo {

// A scene plus its patch sequence, ready to render any frame.
struct BuiltScene {
  Scene scene;
  PatchSequence patches;
  nlohmann::json resolved_config;
};

// Deterministic scene assembly: load textures (sorted by filename), extract
// patches, load the mesh pool, build background geometry, spawn objects per
// the disparity target, assign patches, derive UV tiling factors. Everything
// draws from sub-streams forked off the master seed.
BuiltScene build_scene(const SceneConfig& cfg);

struct GenerateStats {
  int frames = 0;
  double seconds = 0.0;
  double frames_per_sec = 0.0;
};

// Render and write every frame with `workers` threads pulling frame indices
// off a shared queue; each worker owns its frames end-to-end. The manifest
// is written last, only after every frame succeeded.
GenerateStats generate_dataset(const BuiltScene& built, const DatasetLayout& layout,
                               int workers);

// Render one frame and write left image, turbo-colored disparity, and
// red-cyan anaglyph into out_dir.
void write_preview(const BuiltScene& built, int frame, const std::filesystem::path& out_dir);

struct DatasetStats {
  int frames = 0;
  DisparityHistogram foreground;  // pixels with disparity >= first target edge
  DisparityHistogram full;
  double l1_foreground = 0.0;
  double l1_full = 0.0;
  double occluded_fraction = 0.0;
  double seconds = 0.0;  // time spent evaluating
  std::string table;     // printable summary
};

// Aggregate statistics over a generated dataset, read back from disk and
// compared against the target distribution recorded in its manifest.
DatasetStats compute_dataset_stats(const std::filesystem::path& root);

struct EvalResult {
  std::vector<std::pair<std::string, MetricsReport>> rows;  // per frame + "all"
  std::string table;
};

// Evaluate predicted disparities against a generated dataset. Predictions
// may mirror the dataset tree or sit flat as frame_NNNNNN.pfm / NNNNNN.pfm.
// regime "noc" restricts to non-occluded pixels; "all" uses every pixel.
EvalResult evaluate_datasets(const std::filesystem::path& pred_root,
                             const std::filesystem::path& gt_root, const std::string& regime);

// Layout reconstruction from a dataset manifest.
DatasetLayout layout_from_manifest(const std::filesystem::path& root,
                                   const nlohmann::json& manifest);

}  // namespace semistereo
