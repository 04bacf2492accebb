// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cstdint>
#include <string>
#include <vector>

#include "semistereo/errors.hpp"

namespace semistereo {

// Rectified stereo rig. Both cameras share the intrinsics; the right eye is
// offset by baseline_m along +x. The principal point sits at the image
// center, so disparity for a point at depth z is f_px() * baseline_m / z.
struct StereoRig {
  int width_px = 0;
  int height_px = 0;
  double focal_mm = 0.0;
  double sensor_width_mm = 0.0;
  double baseline_m = 0.0;
  double z_near_m = 0.0;
  double ndisp = 0.0;  // disparity budget; rendered disparities must stay <= ndisp

  // Focal length in pixels, from the physical focal length and sensor width.
  double f_px() const { return focal_mm / sensor_width_mm * width_px; }

  void validate() const;
};

// Baseline that makes a point at depth z_min_m project with disparity
// max_disp_px. Used by presets to hit a target disparity range.
double solve_baseline(double max_disp_px, double z_min_m, double f_px);

// Rigid placement with per-axis scale. Applies as translate(rotate(scale(p))).
struct Transform {
  Eigen::Vector3d translation{0.0, 0.0, 0.0};
  Eigen::Quaterniond rotation{1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d scale{1.0, 1.0, 1.0};

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return translation + rotation * scale.cwiseProduct(p);
  }

  // Exact inverse mapping. Not representable as another Transform when the
  // scale is anisotropic, hence a function instead of an inverse() object.
  Eigen::Vector3d apply_inverse(const Eigen::Vector3d& p) const {
    return (rotation.conjugate() * (p - translation)).cwiseQuotient(scale);
  }

  void validate() const;
};

// Indexed triangle mesh with mandatory per-corner texture coordinates.
// Position and UV indices are independent so flat-mapped faces can share
// positions.
struct Triangle {
  int v[3];   // position indices
  int vt[3];  // uv indices
};

struct MeshAsset {
  std::string name;
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Vector2d> uvs;
  std::vector<Triangle> triangles;

  void validate() const;
  Eigen::AlignedBox3d bounds() const;
  // Largest vertex distance from the model origin. Spawn margins use this to
  // keep whole objects behind the minimum-depth plane.
  double bounding_radius() const;
};

// Ballistic motion state of one spawned object. Pose at time t after spawn:
// translation p0 + v0 t + g t^2 / 2, spin axis-angle(axis, omega t) composed
// onto the instance's base orientation.
struct ParticleState {
  Eigen::Vector3d p0{0.0, 0.0, 0.0};
  Eigen::Vector3d v0{0.0, 0.0, 0.0};
  Eigen::Vector3d axis{0.0, 1.0, 0.0};  // unit spin axis
  double omega = 0.0;                   // rad/s
  int spawn_frame = 0;                  // first frame the object is visible
  double scale = 1.0;                   // drawn size parameter (unit depends on size mode)
};

// One textured object in the scene. Background geometry uses particle = -1
// and is static.
struct ObjectInstance {
  int mesh = -1;       // index into Scene::meshes
  Transform transform; // base pose; spawned objects get motion composed on top
  int patch = -1;      // index into the scene's patch sequence
  double uv_scale = 1.0;
  int particle = -1;   // index into Scene::particles, -1 for static geometry
};

struct Scene {
  StereoRig rig;
  std::vector<MeshAsset> meshes;
  std::vector<ObjectInstance> objects;  // background instances first, then spawned
  std::vector<ParticleState> particles;
  int background_objects = 0;  // leading entries of `objects` that are background
  Eigen::Vector3d gravity{0.0, 0.0, 0.0};
  double fps = 10.0;
  int frames = 1;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;

  void validate(int patch_count) const;
};

}  // namespace semistereo
