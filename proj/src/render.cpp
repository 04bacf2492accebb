// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "semistereo/placement.hpp"

namespace semistereo {

PixelPoint project_point(const Eigen::Vector3d& p_world, const StereoRig& rig, Eye eye) {
  const double z = p_world.z();
  if (!(z > 0.0)) throw ValidationError("project_point: point is behind the camera");
  const double off = eye == Eye::Right ? rig.baseline_m : 0.0;
  const double f = rig.f_px();
  return {f * (p_world.x() - off) / z + rig.width_px / 2.0,
          f * p_world.y() / z + rig.height_px / 2.0, z};
}

std::vector<WorldTri> build_world_triangles(const Scene& scene, int frame) {
  std::vector<WorldTri> out;
  for (std::size_t oi = 0; oi < scene.objects.size(); ++oi) {
    const ObjectInstance& obj = scene.objects[oi];
    Transform pose = obj.transform;
    if (obj.particle >= 0) {
      const ParticleState& ps = scene.particles[obj.particle];
      if (frame < ps.spawn_frame) continue;
      const double t = (frame - ps.spawn_frame) / scene.fps;
      // Motion replaces the base translation (p0 is its t=0 value) and
      // composes the spin onto the base orientation.
      const Transform m = step_motion(ps, scene.gravity, t);
      pose.translation = m.translation;
      pose.rotation = m.rotation * obj.transform.rotation;
    }
    const MeshAsset& mesh = scene.meshes[obj.mesh];
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
      const Triangle& t = mesh.triangles[ti];
      WorldTri w;
      for (int k = 0; k < 3; ++k) {
        w.p[k] = pose.apply(mesh.positions[t.v[k]]);
        w.u[k] = mesh.uvs[t.vt[k]].x() * obj.uv_scale;
        w.v[k] = mesh.uvs[t.vt[k]].y() * obj.uv_scale;
      }
      w.patch = obj.patch;
      w.object = static_cast<int>(oi);
      w.tri = static_cast<int>(ti);
      out.push_back(w);
    }
  }
  return out;
}

namespace {

struct ClipVert {
  Eigen::Vector3d p;
  double u, v;
};

// Clip one triangle against z >= z_near (Sutherland-Hodgman). Attributes
// interpolate linearly in 3D, which is exact on the triangle surface.
// Returns 0 to 4 vertices.
int clip_near(const WorldTri& t, double z_near, ClipVert out[4]) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const double zi = t.p[i].z(), zj = t.p[j].z();
    const bool in_i = zi >= z_near, in_j = zj >= z_near;
    if (in_i) out[n++] = {t.p[i], t.u[i], t.v[i]};
    if (in_i != in_j) {
      const double a = (z_near - zi) / (zj - zi);
      out[n++] = {t.p[i] + a * (t.p[j] - t.p[i]), t.u[i] + a * (t.u[j] - t.u[i]),
                  t.v[i] + a * (t.v[j] - t.v[i])};
    }
  }
  return n;
}

// Screen-space setup of one clipped triangle for one eye.
struct RasterTri {
  double sx[3], sy[3];
  double invz[3], uoz[3], voz[3];
  int patch;
};

void raster_band(const std::vector<RasterTri>& tris, const StereoRig& rig,
                 const PatchSequence& patches, int row_begin, int row_end,
                 Image8& color, std::vector<float>& invz_buf) {
  const int W = rig.width_px;
  for (const RasterTri& rt : tris) {
    double sx[3] = {rt.sx[0], rt.sx[1], rt.sx[2]};
    double sy[3] = {rt.sy[0], rt.sy[1], rt.sy[2]};
    double az[3] = {rt.invz[0], rt.invz[1], rt.invz[2]};
    double au[3] = {rt.uoz[0], rt.uoz[1], rt.uoz[2]};
    double av[3] = {rt.voz[0], rt.voz[1], rt.voz[2]};
    double area2 = (sx[1] - sx[0]) * (sy[2] - sy[0]) - (sy[1] - sy[0]) * (sx[2] - sx[0]);
    if (!(std::abs(area2) > 1e-14)) continue;
    if (area2 < 0.0) {
      // Double-sided: canonicalize the winding, swapping attributes along.
      std::swap(sx[1], sx[2]);
      std::swap(sy[1], sy[2]);
      std::swap(az[1], az[2]);
      std::swap(au[1], au[2]);
      std::swap(av[1], av[2]);
      area2 = -area2;
    }

    const double xmin = std::min({sx[0], sx[1], sx[2]});
    const double xmax = std::max({sx[0], sx[1], sx[2]});
    const double ymin = std::min({sy[0], sy[1], sy[2]});
    const double ymax = std::max({sy[0], sy[1], sy[2]});
    const int x0 = std::max(0, static_cast<int>(std::floor(xmin - 0.5)));
    const int x1 = std::min(W - 1, static_cast<int>(std::ceil(xmax - 0.5)));
    const int y0 = std::max(row_begin, static_cast<int>(std::floor(ymin - 0.5)));
    const int y1 = std::min(row_end - 1, static_cast<int>(std::ceil(ymax - 0.5)));
    if (x0 > x1 || y0 > y1) continue;

    // Edge functions E_k(p) = ek_a * px + ek_b * py + ek_c, edge k running
    // from vertex k to k+1; inside means all E >= 0 after canonicalization.
    // Zeros count only on top (dy == 0, dx > 0) and left (dy < 0) edges.
    double ea[3], eb[3], ec[3];
    bool zero_ok[3];
    for (int k = 0; k < 3; ++k) {
      const int j = (k + 1) % 3;
      const double dx = sx[j] - sx[k], dy = sy[j] - sy[k];
      ea[k] = -dy;
      eb[k] = dx;
      ec[k] = dy * sx[k] - dx * sy[k];
      zero_ok[k] = (dy < 0.0) || (dy == 0.0 && dx > 0.0);
    }
    // Interpolation planes: attr(p) = gx * px + gy * py + g0. The weight of
    // vertex (k+2)%3 is E_k / area2.
    const double ia = 1.0 / area2;
    double zgx = 0, zgy = 0, zg0 = 0, ugx = 0, ugy = 0, ug0 = 0, vgx = 0, vgy = 0, vg0 = 0;
    for (int k = 0; k < 3; ++k) {
      const int m = (k + 2) % 3;
      zgx += ea[k] * az[m] * ia;
      zgy += eb[k] * az[m] * ia;
      zg0 += ec[k] * az[m] * ia;
      ugx += ea[k] * au[m] * ia;
      ugy += eb[k] * au[m] * ia;
      ug0 += ec[k] * au[m] * ia;
      vgx += ea[k] * av[m] * ia;
      vgy += eb[k] * av[m] * ia;
      vg0 += ec[k] * av[m] * ia;
    }

    const Image8& patch = patches.patches[rt.patch];
    for (int y = y0; y <= y1; ++y) {
      const double cy = y + 0.5;
      const double cx0 = x0 + 0.5;
      double e0 = ea[0] * cx0 + eb[0] * cy + ec[0];
      double e1 = ea[1] * cx0 + eb[1] * cy + ec[1];
      double e2 = ea[2] * cx0 + eb[2] * cy + ec[2];
      double iz = zgx * cx0 + zgy * cy + zg0;
      double uz = ugx * cx0 + ugy * cy + ug0;
      double vz = vgx * cx0 + vgy * cy + vg0;
      float* zrow = invz_buf.data() + static_cast<std::size_t>(y) * W;
      std::uint8_t* crow = color.data.data() + static_cast<std::size_t>(y) * W * 3;
      for (int x = x0; x <= x1;
           ++x, e0 += ea[0], e1 += ea[1], e2 += ea[2], iz += zgx, uz += ugx, vz += vgx) {
        const bool in = (e0 > 0.0 || (e0 == 0.0 && zero_ok[0])) &&
                        (e1 > 0.0 || (e1 == 0.0 && zero_ok[1])) &&
                        (e2 > 0.0 || (e2 == 0.0 && zero_ok[2]));
        if (!in) continue;
        const float izf = static_cast<float>(iz);
        // Strict-less depth test in z is strict-greater in 1/z; equal keeps
        // the earlier triangle, which is the current buffer holder.
        if (!(izf > zrow[x])) continue;
        zrow[x] = izf;
        const auto rgb =
            sample_texture(patch, uz / iz, vz / iz, Filter::Bilinear);
        crow[3 * x] = rgb[0];
        crow[3 * x + 1] = rgb[1];
        crow[3 * x + 2] = rgb[2];
      }
    }
  }
}

}  // namespace

RenderBuffers rasterize(const std::vector<WorldTri>& tris, const StereoRig& rig,
                        const PatchSequence& patches, Eye eye, int bands) {
  rig.validate();
  if (bands < 1) throw ValidationError("rasterize: band count must be positive");
  const int W = rig.width_px, H = rig.height_px;
  const double f = rig.f_px();
  const double off = eye == Eye::Right ? rig.baseline_m : 0.0;

  // Clip against the near plane (z is eye-independent), then project.
  std::vector<RasterTri> setup;
  setup.reserve(tris.size());
  for (const WorldTri& t : tris) {
    if (t.patch < 0 || t.patch >= patches.count())
      throw ValidationError("rasterize: triangle references a missing patch");
    ClipVert poly[4];
    const int n = clip_near(t, rig.z_near_m, poly);
    for (int k = 1; k + 1 < n; ++k) {
      const ClipVert* v[3] = {&poly[0], &poly[k], &poly[k + 1]};
      RasterTri rt;
      for (int i = 0; i < 3; ++i) {
        const double z = v[i]->p.z();
        rt.sx[i] = f * (v[i]->p.x() - off) / z + W / 2.0;
        rt.sy[i] = f * v[i]->p.y() / z + H / 2.0;
        rt.invz[i] = 1.0 / z;
        rt.uoz[i] = v[i]->u * rt.invz[i];
        rt.voz[i] = v[i]->v * rt.invz[i];
      }
      rt.patch = t.patch;
      setup.push_back(rt);
    }
  }

  RenderBuffers out;
  out.color = Image8(W, H, 3, 0);
  std::vector<float> invz_buf(static_cast<std::size_t>(W) * H, 0.f);

  if (bands == 1) {
    raster_band(setup, rig, patches, 0, H, out.color, invz_buf);
  } else {
    std::vector<std::thread> pool;
    for (int b = 0; b < bands; ++b) {
      const int r0 = static_cast<int>(static_cast<long long>(H) * b / bands);
      const int r1 = static_cast<int>(static_cast<long long>(H) * (b + 1) / bands);
      if (r0 == r1) continue;
      pool.emplace_back(raster_band, std::cref(setup), std::cref(rig), std::cref(patches),
                        r0, r1, std::ref(out.color), std::ref(invz_buf));
    }
    for (auto& th : pool) th.join();
  }

  out.depth = FloatMap(W, H);
  for (std::size_t i = 0; i < invz_buf.size(); ++i)
    out.depth.data[i] =
        invz_buf[i] > 0.f ? 1.f / invz_buf[i] : std::numeric_limits<float>::infinity();
  return out;
}

FloatMap depth_to_disparity(const FloatMap& depth, const StereoRig& rig) {
  const double fb = rig.f_px() * rig.baseline_m;
  FloatMap disp(depth.width, depth.height);
  for (std::size_t i = 0; i < depth.data.size(); ++i) {
    const float z = depth.data[i];
    if (!std::isfinite(z)) {
      disp.data[i] = 0.f;
      continue;
    }
    const double d = fb / z;
    if (d > rig.ndisp) {
      const int x = static_cast<int>(i) % depth.width;
      const int y = static_cast<int>(i) / depth.width;
      throw MaxDisparityExceededError("disparity " + std::to_string(d) + " at (" +
                                      std::to_string(x) + "," + std::to_string(y) +
                                      ") exceeds ndisp " + std::to_string(rig.ndisp));
    }
    disp.data[i] = static_cast<float>(d);
  }
  return disp;
}

Mask occlusion_mask(const FloatMap& depth_left, const FloatMap& depth_right,
                    const StereoRig& rig) {
  if (depth_left.width != depth_right.width || depth_left.height != depth_right.height)
    throw ValidationError("occlusion_mask: depth maps disagree in size");
  const double fb = rig.f_px() * rig.baseline_m;
  Mask occ(depth_left.width, depth_left.height, 0);
  for (int y = 0; y < depth_left.height; ++y) {
    for (int x = 0; x < depth_left.width; ++x) {
      const double zl = depth_left.at(x, y);
      const bool l_fin = std::isfinite(zl);
      const double d = l_fin ? fb / zl : 0.0;
      const long xr = std::lround(x - d);
      if (xr < 0 || xr >= depth_left.width) {
        occ.at(x, y) = 1;
        continue;
      }
      const double zr = depth_right.at(static_cast<int>(xr), y);
      if (!l_fin) {
        // Nothing in the left view: occluded only if the right view has
        // geometry in front at the match column.
        occ.at(x, y) = std::isfinite(zr) ? 1 : 0;
        continue;
      }
      if (!std::isfinite(zr) || std::abs(zr - zl) / zl > 0.01) occ.at(x, y) = 1;
    }
  }
  return occ;
}

FrameSample render_pair(const Scene& scene, const PatchSequence& patches, int frame,
                        int bands) {
  if (frame < 0 || frame >= scene.frames)
    throw ValidationError("render_pair: frame index out of range");
  const auto tris = build_world_triangles(scene, frame);

  FrameSample s;
  s.frame = frame;
  s.frame_seed = mix_seed(scene.seed, static_cast<std::uint64_t>(frame));
  RenderBuffers left = rasterize(tris, scene.rig, patches, Eye::Left, bands);
  RenderBuffers right = rasterize(tris, scene.rig, patches, Eye::Right, bands);
  s.disparity = depth_to_disparity(left.depth, scene.rig);
  s.occlusion = occlusion_mask(left.depth, right.depth, scene.rig);
  s.left = std::move(left.color);
  s.right = std::move(right.color);
  s.depth_left = std::move(left.depth);
  s.depth_right = std::move(right.depth);

  std::size_t occluded = 0;
  for (std::uint8_t v : s.occlusion.data) occluded += v ? 1 : 0;
  if (occluded * 2 > s.occlusion.data.size())
    throw ValidationError("render_pair: more than half of frame " + std::to_string(frame) +
                          " is occluded; the scene is degenerate");
  return s;
}

}  // namespace semistereo
