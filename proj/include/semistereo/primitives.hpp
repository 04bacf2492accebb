// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "semistereo/scene.hpp"

namespace semistereo {

// Procedural meshes centered on the origin, each surface region UV-mapped
// into [0,1]^2. Dimensions are in meters; segment counts must be >= 3.

// Rectangle in the xy plane (z = 0).
MeshAsset make_plane(double size_x, double size_y);

// Axis-aligned box; every face carries the full unit UV square.
MeshAsset make_cuboid(double size_x, double size_y, double size_z);

// Capped cylinder along the y axis. The shell unwraps to the unit square,
// the caps map to inscribed discs.
MeshAsset make_cylinder(double radius, double height, int segments);

// Capped cone along the y axis, apex up.
MeshAsset make_cone(double radius, double height, int segments);

// Latitude/longitude sphere. `segments` around the equator, `rings` from
// pole to pole.
MeshAsset make_uv_sphere(double radius, int segments, int rings);

// The built-in object pool used when a config asks for pool = "primitives".
std::vector<MeshAsset> primitive_pool();

}  // namespace semistereo
