// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "semistereo/image.hpp"
#include "semistereo/scene.hpp"
#include "semistereo/texture.hpp"

namespace semistereo {

enum class Eye { Left, Right };

// Pixel coordinates of a world point seen by one eye. The left camera sits
// at the origin looking down +z, the right camera at (baseline, 0, 0); both
// share the intrinsics, principal point at the image center, +y toward
// larger rows.
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // camera depth in meters
};
PixelPoint project_point(const Eigen::Vector3d& p_world, const StereoRig& rig, Eye eye);

// One world-space triangle ready to draw: posed positions, UVs already
// multiplied by the object's tiling factor, and its provenance for depth-tie
// ordering. The ray-cast path consumes the same list.
struct WorldTri {
  Eigen::Vector3d p[3];
  double u[3];
  double v[3];
  int patch = -1;
  int object = -1;
  int tri = -1;
};

// All triangles visible at the given frame, background first, then objects
// in spawn order, triangles in mesh order. Spawned objects appear once their
// spawn frame is reached, posed by ballistic motion and spin.
std::vector<WorldTri> build_world_triangles(const Scene& scene, int frame);

struct RenderBuffers {
  Image8 color;   // RGB, unlit texture samples
  FloatMap depth; // camera z in meters, +inf where nothing was drawn
};

// Z-buffered scanline rasterizer. Coverage at pixel centers with a top-left
// fill rule; attributes interpolate perspective-correctly (u/z, v/z, 1/z);
// the depth test is strict-less with ties kept by the earlier triangle in
// submission order; triangles are double-sided. Geometry is clipped against
// z = z_near only. `bands` splits rows into that many horizontally threaded
// bands; every pixel is owned by exactly one band and sees the triangles in
// the same order, so output is identical for any band count.
RenderBuffers rasterize(const std::vector<WorldTri>& tris, const StereoRig& rig,
                        const PatchSequence& patches, Eye eye, int bands = 1);

// fb / z per pixel, 0 where depth is infinite. Throws
// MaxDisparityExceededError if any pixel lands above the rig's ndisp.
FloatMap depth_to_disparity(const FloatMap& depth, const StereoRig& rig);

// A left pixel is occluded when its match column x - d falls outside the
// right image or the right depth there disagrees with the left depth by more
// than 1% (relative).
Mask occlusion_mask(const FloatMap& depth_left, const FloatMap& depth_right,
                    const StereoRig& rig);

struct FrameSample {
  Image8 left;
  Image8 right;
  FloatMap disparity;  // for the left view, subpixel
  Mask occlusion;
  FloatMap depth_left;
  FloatMap depth_right;
  int frame = 0;
  std::uint64_t frame_seed = 0;
};

// Render one rectified pair with ground truth. Fails if more than half of
// all pixels come out occluded, which indicates a degenerate scene.
FrameSample render_pair(const Scene& scene, const PatchSequence& patches, int frame,
                        int bands = 1);

}  // namespace semistereo
