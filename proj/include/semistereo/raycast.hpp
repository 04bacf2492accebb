// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "semistereo/render.hpp"

namespace semistereo {

struct RayHit {
  double z = 0.0;        // camera depth of the nearest hit
  double z_next = 0.0;   // next-nearest hit behind it (infinity if none)
  int object = -1;
  int tri = -1;
  double min_bary = 0.0; // smallest barycentric coordinate of the hit
};

// Independent visibility path: cast the ray through a pixel center and
// intersect every triangle directly. Nearest hit wins; exact depth ties go
// to the lower (object, triangle) index, matching the rasterizer's rule.
// Hits in front of the near clip are ignored. Used as the oracle the
// rasterizer is validated against.
std::optional<RayHit> raycast_pixel(const std::vector<WorldTri>& tris, const StereoRig& rig,
                                    Eye eye, double px, double py);

}  // namespace semistereo
