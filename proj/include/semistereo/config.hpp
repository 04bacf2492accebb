// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "semistereo/placement.hpp"
#include "semistereo/scene.hpp"
#include "semistereo/texture.hpp"

namespace semistereo {

// Parsed and validated scene description. The key schema is fixed (see
// README); unknown keys anywhere in the tree are errors so typos cannot
// silently change a dataset.
struct SceneConfig {
  StereoRig rig;

  enum class BackgroundKind { Room, FarPlane };
  BackgroundKind bg_kind = BackgroundKind::FarPlane;
  Eigen::Vector3d room_size{8.0, 6.0, 16.0};  // width, height, depth in meters
  double far_plane_depth_m = 0.0;             // 0 means auto (depth of disparity 0.01)

  Emitter emitter;
  DisparityTarget target;

  std::filesystem::path textures_dir;
  PatchSpec patch_spec;

  std::string objects_pool = "primitives";  // or a directory of .obj files
  long long objects_total = 0;
  SizeMode size_mode = SizeMode::Angular;
  double size_min = 0.0, size_max = 0.0;
  bool anisotropic = false;
  std::pair<double, double> aniso_range{0.7, 1.4};
  int preroll_frames = 0;

  int frames = 1;
  double fps = 10.0;
  std::uint64_t seed = 0;

  // Directory the config file lives in; relative paths resolve against the
  // working directory first, then against this.
  std::filesystem::path base_dir = ".";

  // Canonical form with every default filled in. Hashing this identifies the
  // dataset; it is embedded in manifests for regeneration.
  nlohmann::json resolved;
  std::uint64_t config_hash = 0;

  std::filesystem::path resolve_path(const std::filesystem::path& p) const;
};

SceneConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
SceneConfig load_config_file(const std::filesystem::path& path);

// Bundled preset configs, looked up under <assets>/presets/<name>.json.
// The asset root comes from $SEMISTEREO_ASSETS, falling back to the
// compiled-in source location.
std::filesystem::path asset_root();
SceneConfig load_preset(const std::string& name);

}  // namespace semistereo
