// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "semistereo/rng.hpp"
#include "semistereo/scene.hpp"

namespace semistereo {

// Desired disparity distribution for spawned objects: bin i covers
// [edges[i], edges[i+1]) with target mass[i]. Edges are positive, ascending,
// and stay within the rig's disparity budget; masses sum to 1.
struct DisparityTarget {
  std::vector<double> edges;
  std::vector<double> mass;

  int bins() const { return static_cast<int>(mass.size()); }
  void validate(const StereoRig& rig) const;
};

// Build a target by binning raw disparity samples against the given edges.
DisparityTarget target_from_samples(const std::vector<double>& samples,
                                    std::vector<double> edges);
// Same, reading one disparity value per line ('#' comments and blank lines
// are skipped).
DisparityTarget target_from_file(const std::filesystem::path& path,
                                 std::vector<double> edges);

// Split `total` objects over the target bins by largest remainder, so counts
// sum exactly to total and each is within one of its real-valued quota.
std::vector<long long> plan_counts(const DisparityTarget& target, long long total);

// Depth interval that projects into disparity bin i: near plane from the
// high disparity edge, far plane from the low one.
struct DepthBand {
  double z_near = 0.0;
  double z_far = 0.0;
};
DepthBand depth_band(const DisparityTarget& target, int bin, const StereoRig& rig);

// Velocity, spin, and gravity ranges objects are launched with.
struct Emitter {
  Eigen::Vector3d v0_min{0.0, 0.0, 0.0};
  Eigen::Vector3d v0_max{0.0, 0.0, 0.0};
  double omega_min = 0.0;  // rad/s
  double omega_max = 0.0;
  Eigen::Vector3d gravity{0.0, 0.0, 0.0};

  void validate() const;
};

// How the drawn size parameter is interpreted.
//  World:   uniform scale factor in meters applied to the mesh.
//  Angular: on-screen extent in pixels of the mesh's longest bounding-box
//           edge at spawn depth; screen size becomes depth-independent, so
//           per-pixel disparity mass tracks per-object bin mass.
enum class SizeMode { World, Angular };

struct SpawnOptions {
  int frame_begin = 0;    // spawn frames drawn uniformly from [frame_begin, frame_end)
  int frame_end = 1;
  int dataset_frames = 1; // frames that will actually be rendered: [0, dataset_frames)
  double fps = 10.0;
  SizeMode size_mode = SizeMode::Angular;
  double size_min = 0.0;
  double size_max = 0.0;
  bool anisotropic = false;
  std::pair<double, double> aniso_range{1.0, 1.0};

  void validate() const;
};

struct SpawnResult {
  std::vector<ObjectInstance> objects;    // mesh/particle indices relative to the pool/result
  std::vector<ParticleState> particles;
};

// Spawn the planned number of objects per disparity bin. Depth is drawn
// uniformly inside the bin's band, raised when needed so that the whole
// object, over its whole ballistic flight, stays behind both the disparity
// budget plane (f b / ndisp) and 1.1 x the near clip. Lateral position is
// uniform over the part of the frustum both eyes see, so every center
// projects into both images at spawn. Per-object draw order is fixed; see
// the implementation.
SpawnResult spawn(const std::vector<MeshAsset>& pool, const DisparityTarget& target,
                  const std::vector<long long>& counts, const Emitter& emitter,
                  const SpawnOptions& opt, const StereoRig& rig, RandomStream& rng);

// Random uniform orientation plus uniform (optionally per-axis) scale jitter
// multiplied onto the instance's transform.
ObjectInstance augment(ObjectInstance obj, RandomStream& rng,
                       std::pair<double, double> scale_jitter, bool anisotropic);

// Pose offset of a particle t seconds after spawn: ballistic translation and
// constant-rate spin. Composes onto the instance's base transform.
Transform step_motion(const ParticleState& p, const Eigen::Vector3d& gravity, double t);

// Uniform samples on S^2 and SO(3) (Shoemake's quaternion method).
Eigen::Vector3d uniform_unit_vector(RandomStream& rng);
Eigen::Quaterniond uniform_quaternion(RandomStream& rng);

}  // namespace semistereo
