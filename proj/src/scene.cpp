// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/scene.hpp"

#include <cmath>
#include <string>

namespace semistereo {

void StereoRig::validate() const {
  if (width_px <= 0 || height_px <= 0)
    throw ValidationError("rig: image dimensions must be positive");
  if (focal_mm <= 0.0 || sensor_width_mm <= 0.0)
    throw ValidationError("rig: focal_mm and sensor_width_mm must be positive");
  if (baseline_m <= 0.0)
    throw ValidationError("rig: baseline_m must be positive");
  if (z_near_m <= 0.0)
    throw ValidationError("rig: z_near_m must be positive");
  if (ndisp <= 0.0)
    throw ValidationError("rig: ndisp must be positive");
  if (!(f_px() > 0.0) || !std::isfinite(f_px()))
    throw ValidationError("rig: derived f_px is not finite");
}

double solve_baseline(double max_disp_px, double z_min_m, double f_px) {
  if (max_disp_px <= 0.0 || z_min_m <= 0.0 || f_px <= 0.0)
    throw ValidationError("solve_baseline: all arguments must be positive");
  return max_disp_px * z_min_m / f_px;
}

void Transform::validate() const {
  if (std::abs(rotation.norm() - 1.0) > 1e-9)
    throw ValidationError("transform: rotation quaternion is not normalized");
  if (!(scale.x() > 0.0 && scale.y() > 0.0 && scale.z() > 0.0))
    throw ValidationError("transform: scale components must be positive");
  if (!translation.allFinite() || !scale.allFinite())
    throw ValidationError("transform: non-finite component");
}

void MeshAsset::validate() const {
  const int nv = static_cast<int>(positions.size());
  const int nt = static_cast<int>(uvs.size());
  if (triangles.empty())
    throw ValidationError("mesh '" + name + "': no triangles");
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const Triangle& t = triangles[i];
    for (int k = 0; k < 3; ++k) {
      if (t.v[k] < 0 || t.v[k] >= nv)
        throw BadIndexError("mesh '" + name + "': triangle " + std::to_string(i) +
                            " position index out of range");
      if (t.vt[k] < 0 || t.vt[k] >= nt)
        throw MissingUvError("mesh '" + name + "': triangle " + std::to_string(i) +
                             " has no texture coordinates");
    }
    const Eigen::Vector3d a = positions[t.v[0]];
    const Eigen::Vector3d b = positions[t.v[1]];
    const Eigen::Vector3d c = positions[t.v[2]];
    const double area2 = (b - a).cross(c - a).norm();
    if (!(area2 > 2e-12))
      throw ValidationError("mesh '" + name + "': triangle " + std::to_string(i) +
                            " is degenerate");
  }
}

Eigen::AlignedBox3d MeshAsset::bounds() const {
  Eigen::AlignedBox3d box;
  for (const auto& p : positions) box.extend(p);
  return box;
}

double MeshAsset::bounding_radius() const {
  double r2 = 0.0;
  for (const auto& p : positions) r2 = std::max(r2, p.squaredNorm());
  return std::sqrt(r2);
}

void Scene::validate(int patch_count) const {
  rig.validate();
  for (const auto& m : meshes) m.validate();
  if (background_objects < 0 || background_objects > static_cast<int>(objects.size()))
    throw ValidationError("scene: background object count out of range");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectInstance& o = objects[i];
    if (o.mesh < 0 || o.mesh >= static_cast<int>(meshes.size()))
      throw ValidationError("scene: object " + std::to_string(i) + " has a dangling mesh reference");
    if (o.patch < 0 || o.patch >= patch_count)
      throw ValidationError("scene: object " + std::to_string(i) + " has a dangling patch reference");
    if (!(o.uv_scale > 0.0))
      throw ValidationError("scene: object " + std::to_string(i) + " has non-positive uv_scale");
    if (o.particle < -1 || o.particle >= static_cast<int>(particles.size()))
      throw ValidationError("scene: object " + std::to_string(i) + " has a dangling particle reference");
    o.transform.validate();
  }
  if (frames < 1) throw ValidationError("scene: frame count must be at least 1");
  if (!(fps > 0.0)) throw ValidationError("scene: fps must be positive");
}

}  // namespace semistereo
