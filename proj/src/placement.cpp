// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/placement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace semistereo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void DisparityTarget::validate(const StereoRig& rig) const {
  if (edges.size() < 2) throw ValidationError("target: need at least one bin");
  if (mass.size() + 1 != edges.size())
    throw ValidationError("target: mass count must be edge count minus one");
  if (!(edges.front() > 0.0)) throw ValidationError("target: edges must be positive");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw ValidationError("target: edges must be strictly increasing");
  if (edges.back() > rig.ndisp + 1e-9)
    throw ValidationError("target: top edge exceeds the rig's ndisp");
  double sum = 0.0;
  for (double m : mass) {
    if (m < 0.0) throw ValidationError("target: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw ValidationError("target: masses must sum to 1");
}

DisparityTarget target_from_samples(const std::vector<double>& samples,
                                    std::vector<double> edges) {
  if (edges.size() < 2) throw ValidationError("target: need at least one bin");
  DisparityTarget t;
  t.edges = std::move(edges);
  t.mass.assign(t.edges.size() - 1, 0.0);
  long long in_range = 0;
  for (double d : samples) {
    if (d < t.edges.front() || d > t.edges.back()) continue;
    auto it = std::upper_bound(t.edges.begin(), t.edges.end(), d);
    int bin = static_cast<int>(it - t.edges.begin()) - 1;
    if (bin == t.bins()) --bin;  // top edge belongs to the last bin
    t.mass[bin] += 1.0;
    ++in_range;
  }
  if (in_range == 0)
    throw ValidationError("target: no samples inside the edge range");
  for (double& m : t.mass) m /= static_cast<double>(in_range);
  return t;
}

DisparityTarget target_from_file(const std::filesystem::path& path,
                                 std::vector<double> edges) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      samples.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad disparity value");
    }
  }
  return target_from_samples(samples, std::move(edges));
}

std::vector<long long> plan_counts(const DisparityTarget& target, long long total) {
  if (total < 0) throw ValidationError("plan_counts: total must be non-negative");
  const int n = target.bins();
  std::vector<long long> counts(n, 0);
  std::vector<double> frac(n, 0.0);
  long long assigned = 0;
  for (int i = 0; i < n; ++i) {
    const double quota = target.mass[i] * static_cast<double>(total);
    counts[i] = static_cast<long long>(std::floor(quota));
    frac[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  // Hand the leftover to the largest remainders, ties to the lower bin.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (long long r = total - assigned, k = 0; r > 0; --r, ++k) counts[order[k % n]] += 1;
  return counts;
}

DepthBand depth_band(const DisparityTarget& target, int bin, const StereoRig& rig) {
  if (bin < 0 || bin >= target.bins()) throw ValidationError("depth_band: bin out of range");
  const double fb = rig.f_px() * rig.baseline_m;
  return {fb / target.edges[bin + 1], fb / target.edges[bin]};
}

void Emitter::validate() const {
  for (int c = 0; c < 3; ++c)
    if (!(v0_min[c] <= v0_max[c]))
      throw ValidationError("emitter: v0_min must not exceed v0_max");
  if (!(omega_min <= omega_max))
    throw ValidationError("emitter: omega_min must not exceed omega_max");
  if (!v0_min.allFinite() || !v0_max.allFinite() || !gravity.allFinite() ||
      !std::isfinite(omega_min) || !std::isfinite(omega_max))
    throw ValidationError("emitter: non-finite parameter");
}

void SpawnOptions::validate() const {
  if (frame_begin >= frame_end) throw ValidationError("spawn: empty frame range");
  if (dataset_frames < 1) throw ValidationError("spawn: dataset_frames must be positive");
  if (!(fps > 0.0)) throw ValidationError("spawn: fps must be positive");
  if (!(size_min > 0.0 && size_min <= size_max))
    throw ValidationError("spawn: need 0 < size_min <= size_max");
  if (!(aniso_range.first > 0.0 && aniso_range.first <= aniso_range.second))
    throw ValidationError("spawn: bad anisotropy range");
}

Eigen::Vector3d uniform_unit_vector(RandomStream& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Eigen::Quaterniond uniform_quaternion(RandomStream& rng) {
  // Shoemake's subgroup method: uniform over SO(3).
  const double u1 = rng.uniform01();
  const double a2 = 2.0 * kPi * rng.uniform01();
  const double a3 = 2.0 * kPi * rng.uniform01();
  const double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
  return Eigen::Quaterniond(s2 * std::cos(a3),  // w
                            s1 * std::sin(a2), s1 * std::cos(a2), s2 * std::sin(a3));
}

ObjectInstance augment(ObjectInstance obj, RandomStream& rng,
                       std::pair<double, double> scale_jitter, bool anisotropic) {
  Eigen::Vector3d j;
  if (anisotropic) {
    j = {rng.uniform(scale_jitter.first, scale_jitter.second),
         rng.uniform(scale_jitter.first, scale_jitter.second),
         rng.uniform(scale_jitter.first, scale_jitter.second)};
  } else {
    j.setConstant(rng.uniform(scale_jitter.first, scale_jitter.second));
  }
  obj.transform.scale = obj.transform.scale.cwiseProduct(j);
  obj.transform.rotation = uniform_quaternion(rng);
  return obj;
}

Transform step_motion(const ParticleState& p, const Eigen::Vector3d& gravity, double t) {
  Transform m;
  m.translation = p.p0 + p.v0 * t + 0.5 * t * t * gravity;
  m.rotation = Eigen::Quaterniond(Eigen::AngleAxisd(p.omega * t, p.axis));
  return m;
}

namespace {

// Most negative z displacement a particle can reach while frames are still
// being rendered. Candidates: the interval ends and the parabola vertex.
double worst_z_drift(double v0z, double gz, double t_max) {
  double lo = std::min(0.0, v0z * t_max + 0.5 * gz * t_max * t_max);
  if (gz != 0.0) {
    const double tv = -v0z / gz;
    if (tv > 0.0 && tv < t_max) lo = std::min(lo, v0z * tv + 0.5 * gz * tv * tv);
  }
  return lo;
}

}  // namespace

SpawnResult spawn(const std::vector<MeshAsset>& pool, const DisparityTarget& target,
                  const std::vector<long long>& counts, const Emitter& emitter,
                  const SpawnOptions& opt, const StereoRig& rig, RandomStream& rng) {
  if (pool.empty()) throw NoMeshesError("spawn: empty mesh pool");
  target.validate(rig);
  emitter.validate();
  opt.validate();
  if (static_cast<int>(counts.size()) != target.bins())
    throw ValidationError("spawn: counts do not match target bins");

  const double f = rig.f_px();
  const double fb = f * rig.baseline_m;
  // The whole object must stay behind both of these planes at all times.
  const double z_floor = std::max(fb / rig.ndisp, 1.1 * rig.z_near_m);

  SpawnResult out;
  for (int bin = 0; bin < target.bins(); ++bin) {
    const DepthBand band = depth_band(target, bin, rig);
    for (long long k = 0; k < counts[bin]; ++k) {
      // Frozen per-object draw order: mesh, size, spawn frame, velocity,
      // spin axis, spin rate, depth, lateral position, then augment.
      const int mesh_idx = static_cast<int>(rng.uniform_index(pool.size()));
      const MeshAsset& mesh = pool[mesh_idx];
      const double size = rng.uniform(opt.size_min, opt.size_max);
      const int spawn_frame =
          static_cast<int>(rng.uniform_int(opt.frame_begin, opt.frame_end));
      ParticleState ps;
      ps.v0 = {rng.uniform(emitter.v0_min.x(), emitter.v0_max.x()),
               rng.uniform(emitter.v0_min.y(), emitter.v0_max.y()),
               rng.uniform(emitter.v0_min.z(), emitter.v0_max.z())};
      ps.axis = uniform_unit_vector(rng);
      ps.omega = rng.uniform(emitter.omega_min, emitter.omega_max);
      ps.spawn_frame = spawn_frame;
      ps.scale = size;

      const double t_max =
          std::max(0.0, (opt.dataset_frames - 1 - spawn_frame) / opt.fps);
      const double drift =
          -worst_z_drift(ps.v0.z(), emitter.gravity.z(), t_max);  // >= 0
      const double bbox_max = mesh.bounds().sizes().maxCoeff();
      const double aniso_hi = opt.anisotropic ? opt.aniso_range.second : 1.0;

      // Smallest spawn depth that keeps the object's bounding sphere behind
      // z_floor for its whole flight.
      double lb;
      if (opt.size_mode == SizeMode::Angular) {
        // radius = c * depth with c fixed by the angular size draw.
        const double c = size * mesh.bounding_radius() * aniso_hi / (f * bbox_max);
        if (c >= 0.95)
          throw ValidationError("spawn: angular size leaves no room in front of the budget plane");
        lb = (z_floor + drift) / (1.0 - c);
      } else {
        lb = z_floor + drift + size * mesh.bounding_radius() * aniso_hi;
      }
      lb = std::max(lb, band.z_near);
      // If the safety margin eats the whole band, spawn at the margin; the
      // bin then underfills its disparity range rather than break the budget.
      const double ub = std::max(band.z_far, lb);
      const double z = lb + rng.uniform01() * (ub - lb);

      // Lateral interval both eyes see at this depth, shrunk a hair so the
      // center projects strictly inside.
      const double hx = 0.5 * rig.width_px * z / f;
      const double hy = 0.5 * rig.height_px * z / f;
      const double mx = 1e-6 * hx, my = 1e-6 * hy;
      double x_lo = rig.baseline_m - hx + mx, x_hi = hx - mx;
      if (!(x_lo < x_hi)) x_lo = x_hi = rig.baseline_m / 2.0;
      const double x = rng.uniform(x_lo, x_hi);
      const double y = rng.uniform(-hy + my, hy - my);
      ps.p0 = {x, y, z};

      ObjectInstance obj;
      obj.mesh = mesh_idx;
      obj.transform.translation = ps.p0;
      const double base_scale =
          opt.size_mode == SizeMode::Angular ? size * z / (f * bbox_max) : size;
      obj.transform.scale.setConstant(base_scale);
      obj = augment(std::move(obj), rng, opt.anisotropic ? opt.aniso_range
                                                         : std::pair<double, double>{1.0, 1.0},
                    opt.anisotropic);
      obj.particle = static_cast<int>(out.particles.size());
      out.objects.push_back(obj);
      out.particles.push_back(ps);
    }
  }
  return out;
}

}  // namespace semistereo
