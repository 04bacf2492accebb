// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/raycast.hpp"

#include <cmath>
#include <limits>

namespace semistereo {

std::optional<RayHit> raycast_pixel(const std::vector<WorldTri>& tris, const StereoRig& rig,
                                    Eye eye, double px, double py) {
  const double f = rig.f_px();
  const Eigen::Vector3d orig(eye == Eye::Right ? rig.baseline_m : 0.0, 0.0, 0.0);
  // Direction with unit z, so the ray parameter equals camera depth.
  const Eigen::Vector3d dir((px - rig.width_px / 2.0) / f, (py - rig.height_px / 2.0) / f,
                            1.0);

  RayHit best;
  best.z = std::numeric_limits<double>::infinity();
  best.z_next = std::numeric_limits<double>::infinity();
  bool found = false;

  for (const WorldTri& wt : tris) {
    // Moller-Trumbore in doubles.
    const Eigen::Vector3d e1 = wt.p[1] - wt.p[0];
    const Eigen::Vector3d e2 = wt.p[2] - wt.p[0];
    const Eigen::Vector3d pv = dir.cross(e2);
    const double det = e1.dot(pv);
    if (std::abs(det) < 1e-300) continue;  // ray parallel to the triangle plane
    const double inv = 1.0 / det;
    const Eigen::Vector3d tv = orig - wt.p[0];
    const double u = tv.dot(pv) * inv;
    if (u < 0.0 || u > 1.0) continue;
    const Eigen::Vector3d qv = tv.cross(e1);
    const double v = dir.dot(qv) * inv;
    if (v < 0.0 || u + v > 1.0) continue;
    const double t = e2.dot(qv) * inv;
    if (t < rig.z_near_m) continue;

    if (t < best.z) {
      if (found) best.z_next = best.z;
      best.z = t;
      best.object = wt.object;
      best.tri = wt.tri;
      best.min_bary = std::min({1.0 - u - v, u, v});
      found = true;
    } else if (found && t > best.z && t < best.z_next) {
      best.z_next = t;
    }
    // t == best.z keeps the earlier (lower-index) triangle.
  }
  if (!found) return std::nullopt;
  return best;
}

}  // namespace semistereo
