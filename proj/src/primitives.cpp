// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/primitives.hpp"

#include <cmath>

namespace semistereo {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ValidationError(std::string("primitive: ") + what + " must be positive");
}

void require_segments(int n, const char* what) {
  if (n < 3) throw ValidationError(std::string("primitive: ") + what + " must be at least 3");
}

}  // namespace

MeshAsset make_plane(double size_x, double size_y) {
  require_positive(size_x, "size_x");
  require_positive(size_y, "size_y");
  MeshAsset m;
  m.name = "plane";
  const double hx = size_x / 2.0, hy = size_y / 2.0;
  m.positions = {{-hx, -hy, 0.0}, {hx, -hy, 0.0}, {hx, hy, 0.0}, {-hx, hy, 0.0}};
  m.uvs = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  m.triangles = {{{0, 1, 2}, {0, 1, 2}}, {{0, 2, 3}, {0, 2, 3}}};
  return m;
}

MeshAsset make_cuboid(double size_x, double size_y, double size_z) {
  require_positive(size_x, "size_x");
  require_positive(size_y, "size_y");
  require_positive(size_z, "size_z");
  MeshAsset m;
  m.name = "cuboid";
  const double hx = size_x / 2.0, hy = size_y / 2.0, hz = size_z / 2.0;
  for (int zi = 0; zi < 2; ++zi)
    for (int yi = 0; yi < 2; ++yi)
      for (int xi = 0; xi < 2; ++xi)
        m.positions.push_back({xi ? hx : -hx, yi ? hy : -hy, zi ? hz : -hz});
  // All six faces share one unit UV square.
  m.uvs = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  // Corner index is x + 2y + 4z; faces listed as quads in wrap order.
  const int faces[6][4] = {
      {0, 1, 3, 2},  // z-
      {4, 5, 7, 6},  // z+
      {0, 1, 5, 4},  // y-
      {2, 3, 7, 6},  // y+
      {0, 2, 6, 4},  // x-
      {1, 3, 7, 5},  // x+
  };
  for (const auto& f : faces) {
    m.triangles.push_back({{f[0], f[1], f[2]}, {0, 1, 2}});
    m.triangles.push_back({{f[0], f[2], f[3]}, {0, 2, 3}});
  }
  return m;
}

MeshAsset make_cylinder(double radius, double height, int segments) {
  require_positive(radius, "radius");
  require_positive(height, "height");
  require_segments(segments, "segments");
  MeshAsset m;
  m.name = "cylinder";
  const double hy = height / 2.0;
  // Positions: bottom ring [0,s), top ring [s,2s), bottom center, top center.
  for (int ring = 0; ring < 2; ++ring) {
    const double y = ring ? hy : -hy;
    for (int i = 0; i < segments; ++i) {
      const double a = 2.0 * kPi * i / segments;
      m.positions.push_back({radius * std::cos(a), y, radius * std::sin(a)});
    }
  }
  const int cb = 2 * segments, ct = 2 * segments + 1;
  m.positions.push_back({0.0, -hy, 0.0});
  m.positions.push_back({0.0, hy, 0.0});
  // UVs: shell grid rows v=0 and v=1 with s+1 columns, then one disc layout
  // shared by both caps (ring points [grid..grid+s), center last).
  for (int ring = 0; ring < 2; ++ring)
    for (int i = 0; i <= segments; ++i)
      m.uvs.push_back({static_cast<double>(i) / segments, static_cast<double>(ring)});
  const int disc0 = 2 * (segments + 1);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    m.uvs.push_back({0.5 + 0.5 * std::cos(a), 0.5 + 0.5 * std::sin(a)});
  }
  const int disc_c = disc0 + segments;
  m.uvs.push_back({0.5, 0.5});
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    // Shell quad: bottom i, bottom j, top j, top i. UV columns do not wrap.
    m.triangles.push_back({{i, j, segments + j}, {i, i + 1, segments + 1 + i + 1}});
    m.triangles.push_back({{i, segments + j, segments + i},
                           {i, segments + 1 + i + 1, segments + 1 + i}});
    m.triangles.push_back({{cb, j, i}, {disc_c, disc0 + j, disc0 + i}});
    m.triangles.push_back({{ct, segments + i, segments + j}, {disc_c, disc0 + i, disc0 + j}});
  }
  return m;
}

MeshAsset make_cone(double radius, double height, int segments) {
  require_positive(radius, "radius");
  require_positive(height, "height");
  require_segments(segments, "segments");
  MeshAsset m;
  m.name = "cone";
  const double hy = height / 2.0;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    m.positions.push_back({radius * std::cos(a), -hy, radius * std::sin(a)});
  }
  const int apex = segments, base_c = segments + 1;
  m.positions.push_back({0.0, hy, 0.0});
  m.positions.push_back({0.0, -hy, 0.0});
  // UVs: base row v=0 with s+1 columns, apex points v=1 centered per segment,
  // then the base disc.
  for (int i = 0; i <= segments; ++i)
    m.uvs.push_back({static_cast<double>(i) / segments, 0.0});
  for (int i = 0; i < segments; ++i)
    m.uvs.push_back({(i + 0.5) / segments, 1.0});
  const int disc0 = 2 * segments + 1;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    m.uvs.push_back({0.5 + 0.5 * std::cos(a), 0.5 + 0.5 * std::sin(a)});
  }
  const int disc_c = disc0 + segments;
  m.uvs.push_back({0.5, 0.5});
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    m.triangles.push_back({{i, j, apex}, {i, i + 1, segments + 1 + i}});
    m.triangles.push_back({{base_c, j, i}, {disc_c, disc0 + j, disc0 + i}});
  }
  return m;
}

MeshAsset make_uv_sphere(double radius, int segments, int rings) {
  require_positive(radius, "radius");
  require_segments(segments, "segments");
  require_segments(rings, "rings");
  MeshAsset m;
  m.name = "sphere";
  // Positions: interior rings r = 1..rings-1, each with `segments` points,
  // then the two poles.
  for (int r = 1; r < rings; ++r) {
    const double theta = kPi * r / rings;
    const double y = radius * std::cos(theta);
    const double rr = radius * std::sin(theta);
    for (int i = 0; i < segments; ++i) {
      const double a = 2.0 * kPi * i / segments;
      m.positions.push_back({rr * std::cos(a), y, rr * std::sin(a)});
    }
  }
  const int top = static_cast<int>(m.positions.size());
  m.positions.push_back({0.0, radius, 0.0});
  const int bottom = top + 1;
  m.positions.push_back({0.0, -radius, 0.0});
  // UVs: grid rows for interior rings (s+1 columns, v = 1 - r/rings), then
  // per-segment pole points.
  for (int r = 1; r < rings; ++r)
    for (int i = 0; i <= segments; ++i)
      m.uvs.push_back({static_cast<double>(i) / segments,
                       1.0 - static_cast<double>(r) / rings});
  const int top_uv0 = static_cast<int>(m.uvs.size());
  for (int i = 0; i < segments; ++i) m.uvs.push_back({(i + 0.5) / segments, 1.0});
  const int bot_uv0 = static_cast<int>(m.uvs.size());
  for (int i = 0; i < segments; ++i) m.uvs.push_back({(i + 0.5) / segments, 0.0});

  const auto ring_v = [&](int r, int i) { return (r - 1) * segments + i % segments; };
  const auto ring_uv = [&](int r, int i) { return (r - 1) * (segments + 1) + i; };
  for (int i = 0; i < segments; ++i) {
    m.triangles.push_back({{top, ring_v(1, i + 1), ring_v(1, i)},
                           {top_uv0 + i, ring_uv(1, i + 1), ring_uv(1, i)}});
    m.triangles.push_back({{bottom, ring_v(rings - 1, i), ring_v(rings - 1, i + 1)},
                           {bot_uv0 + i, ring_uv(rings - 1, i), ring_uv(rings - 1, i + 1)}});
  }
  for (int r = 1; r < rings - 1; ++r) {
    for (int i = 0; i < segments; ++i) {
      m.triangles.push_back({{ring_v(r, i), ring_v(r, i + 1), ring_v(r + 1, i + 1)},
                             {ring_uv(r, i), ring_uv(r, i + 1), ring_uv(r + 1, i + 1)}});
      m.triangles.push_back({{ring_v(r, i), ring_v(r + 1, i + 1), ring_v(r + 1, i)},
                             {ring_uv(r, i), ring_uv(r + 1, i + 1), ring_uv(r + 1, i)}});
    }
  }
  return m;
}

std::vector<MeshAsset> primitive_pool() {
  std::vector<MeshAsset> pool;
  pool.push_back(make_cuboid(1.0, 1.0, 1.0));
  pool.push_back(make_uv_sphere(0.5, 24, 12));
  pool.push_back(make_cylinder(0.5, 1.0, 24));
  pool.push_back(make_cone(0.5, 1.0, 24));
  pool.push_back(make_plane(1.0, 1.0));
  return pool;
}

}  // namespace semistereo
