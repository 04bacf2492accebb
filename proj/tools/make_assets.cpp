// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the bundled assets: tileable texture images and closed,
// UV-mapped .obj meshes. The outputs are committed; rerun only when the
// recipes change. Usage: make_assets <asset dir>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "semistereo/image.hpp"
#include "semistereo/obj_loader.hpp"
#include "semistereo/png_io.hpp"
#include "semistereo/rng.hpp"

namespace {

using namespace semistereo;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;
constexpr int kSide = 512;

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
}

// Sums of low-frequency sinusoids with integer cycle counts, so the image
// tiles seamlessly and stays smooth at texel scale.
Image8 synth_texture(std::uint64_t seed) {
  RandomStream rng(seed);
  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<std::vector<Wave>> waves(3);
  for (auto& channel : waves)
    for (int j = 0; j < 4; ++j) {
      Wave w;
      w.fx = static_cast<double>(rng.uniform_int(-5, 6));
      w.fy = static_cast<double>(rng.uniform_int(-5, 6));
      if (w.fx == 0.0 && w.fy == 0.0) w.fy = 1.0;
      w.phase = rng.uniform(0.0, 2.0 * kPi);
      w.amp = rng.uniform(0.05, 0.16);
      channel.push_back(w);
    }
  Image8 img(kSide, kSide, 3);
  for (int y = 0; y < kSide; ++y)
    for (int x = 0; x < kSide; ++x)
      for (int c = 0; c < 3; ++c) {
        double v = 0.5;
        for (const Wave& w : waves[c])
          v += w.amp * std::sin(2.0 * kPi * (w.fx * x + w.fy * y) / kSide + w.phase);
        img.at(x, y, c) = to_u8(v);
      }
  return img;
}

// Tileable value noise: random lattice values interpolated with smoothstep.
double value_noise(const std::vector<double>& lattice, int cells, double x, double y) {
  const double fx = x * cells, fy = y * cells;
  const int x0 = static_cast<int>(fx) % cells, y0 = static_cast<int>(fy) % cells;
  const int x1 = (x0 + 1) % cells, y1 = (y0 + 1) % cells;
  const double tx = fx - std::floor(fx), ty = fy - std::floor(fy);
  const double sx = tx * tx * (3.0 - 2.0 * tx), sy = ty * ty * (3.0 - 2.0 * ty);
  const double a = lattice[y0 * cells + x0], b = lattice[y0 * cells + x1];
  const double c = lattice[y1 * cells + x0], d = lattice[y1 * cells + x1];
  return (a + (b - a) * sx) * (1.0 - sy) + (c + (d - c) * sx) * sy;
}

// Multi-octave noise with a per-image color ramp; busier than the sinusoid
// set, standing in for photographic crops.
Image8 photo_texture(std::uint64_t seed) {
  RandomStream rng(seed);
  struct Octave {
    int cells;
    double amp;
    std::vector<double> lattice;
  };
  std::vector<Octave> octaves;
  double amp = 0.5;
  for (int cells = 4; cells <= 64; cells *= 2, amp *= 0.55) {
    Octave o{cells, amp, {}};
    o.lattice.resize(static_cast<std::size_t>(cells) * cells);
    for (double& v : o.lattice) v = rng.uniform(-1.0, 1.0);
    octaves.push_back(std::move(o));
  }
  Eigen::Vector3d base{rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7)};
  Eigen::Vector3d tint{rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35),
                       rng.uniform(-0.35, 0.35)};
  Image8 img(kSide, kSide, 3);
  for (int y = 0; y < kSide; ++y)
    for (int x = 0; x < kSide; ++x) {
      const double u = (x + 0.5) / kSide, v = (y + 0.5) / kSide;
      double n = 0.0;
      for (const Octave& o : octaves) n += o.amp * value_noise(o.lattice, o.cells, u, v);
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = to_u8(base[c] + tint[c] * n + 0.25 * n);
    }
  return img;
}

struct ObjMesh {
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Vector2d> uvs;
  // 1-based position and uv index triples, OBJ-style.
  std::vector<std::array<std::array<int, 2>, 3>> faces;

  void quad(int pa, int pb, int pc, int pd, int ta, int tb, int tc, int td) {
    faces.push_back({{{pa, ta}, {pb, tb}, {pc, tc}}});
    faces.push_back({{{pa, ta}, {pc, tc}, {pd, td}}});
  }
};

void write_obj(const fs::path& path, const ObjMesh& m, const std::string& comment) {
  std::ofstream out(path);
  char buf[128];
  out << "# " << comment << "\n";
  for (const auto& p : m.positions) {
    std::snprintf(buf, sizeof(buf), "v %.6f %.6f %.6f\n", p.x(), p.y(), p.z());
    out << buf;
  }
  for (const auto& t : m.uvs) {
    std::snprintf(buf, sizeof(buf), "vt %.6f %.6f\n", t.x(), t.y());
    out << buf;
  }
  for (const auto& f : m.faces) {
    std::snprintf(buf, sizeof(buf), "f %d/%d %d/%d %d/%d\n", f[0][0], f[0][1], f[1][0],
                  f[1][1], f[2][0], f[2][1]);
    out << buf;
  }
}

// Torus: shared position grid, UV grid with duplicated seam columns/rows.
ObjMesh torus(double R, double r, int rings, int segs) {
  ObjMesh m;
  for (int i = 0; i < rings; ++i) {
    const double a = 2.0 * kPi * i / rings;
    for (int j = 0; j < segs; ++j) {
      const double b = 2.0 * kPi * j / segs;
      m.positions.emplace_back((R + r * std::cos(b)) * std::cos(a),
                               (R + r * std::cos(b)) * std::sin(a), r * std::sin(b));
    }
  }
  for (int i = 0; i <= rings; ++i)
    for (int j = 0; j <= segs; ++j)
      m.uvs.emplace_back(static_cast<double>(i) / rings, static_cast<double>(j) / segs);
  const auto P = [&](int i, int j) { return (i % rings) * segs + (j % segs) + 1; };
  const auto T = [&](int i, int j) { return i * (segs + 1) + j + 1; };
  for (int i = 0; i < rings; ++i)
    for (int j = 0; j < segs; ++j)
      m.quad(P(i, j), P(i + 1, j), P(i + 1, j + 1), P(i, j + 1), T(i, j), T(i + 1, j),
             T(i + 1, j + 1), T(i, j + 1));
  return m;
}

// Star-shaped prism: alternating outer/inner ring, flat caps, side wall.
ObjMesh star_prism(int points, double r_out, double r_in, double half_h) {
  ObjMesh m;
  const int n = 2 * points;
  for (int side = 0; side < 2; ++side) {
    const double z = side == 0 ? -half_h : half_h;
    for (int i = 0; i < n; ++i) {
      const double a = kPi * i / points;
      const double r = i % 2 == 0 ? r_out : r_in;
      m.positions.emplace_back(r * std::cos(a), r * std::sin(a), z);
    }
  }
  m.positions.emplace_back(0.0, 0.0, -half_h);
  m.positions.emplace_back(0.0, 0.0, half_h);
  const int c0 = 2 * n + 1, c1 = 2 * n + 2;

  // Cap UVs project the star onto the unit square; both caps share them.
  for (int i = 0; i < n; ++i) {
    const double a = kPi * i / points;
    const double r = i % 2 == 0 ? r_out : r_in;
    m.uvs.emplace_back(0.5 + r * std::cos(a) / (2.0 * r_out),
                       0.5 + r * std::sin(a) / (2.0 * r_out));
  }
  m.uvs.emplace_back(0.5, 0.5);
  const int tc = n + 1;
  // Side-wall strip UVs: u along the perimeter, v across the height.
  for (int i = 0; i <= n; ++i) {
    m.uvs.emplace_back(static_cast<double>(i) / n, 0.0);
    m.uvs.emplace_back(static_cast<double>(i) / n, 1.0);
  }
  const auto S = [&](int i, int v) { return n + 2 + 2 * i + v; };

  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    m.faces.push_back({{{c0, tc}, {i + 1, i + 1}, {j + 1, j + 1}}});
    m.faces.push_back({{{c1, tc}, {n + j + 1, j + 1}, {n + i + 1, i + 1}}});
    m.quad(i + 1, j + 1, n + j + 1, n + i + 1, S(i, 0), S(i + 1, 0), S(i + 1, 1), S(i, 1));
  }
  return m;
}

// Open cylinder with wall thickness: two shells plus annulus end caps.
ObjMesh tube(double r_out, double r_in, double half_h, int segs) {
  ObjMesh m;
  // Ring order: outer bottom, outer top, inner bottom, inner top.
  for (const auto& [r, z] : {std::pair{r_out, -half_h}, {r_out, half_h},
                             {r_in, -half_h}, {r_in, half_h}})
    for (int i = 0; i < segs; ++i) {
      const double a = 2.0 * kPi * i / segs;
      m.positions.emplace_back(r * std::cos(a), r * std::sin(a), z);
    }
  // Four UV strips stacked in v: outer shell, inner shell, two caps.
  for (int strip = 0; strip < 4; ++strip)
    for (int i = 0; i <= segs; ++i) {
      const double u = static_cast<double>(i) / segs;
      m.uvs.emplace_back(u, 0.25 * strip);
      m.uvs.emplace_back(u, 0.25 * strip + 0.25);
    }
  const auto P = [&](int ring, int i) { return ring * segs + (i % segs) + 1; };
  const auto T = [&](int strip, int i, int v) { return strip * 2 * (segs + 1) + 2 * i + v + 1; };
  for (int i = 0; i < segs; ++i) {
    m.quad(P(0, i), P(0, i + 1), P(1, i + 1), P(1, i), T(0, i, 0), T(0, i + 1, 0),
           T(0, i + 1, 1), T(0, i, 1));
    m.quad(P(2, i), P(3, i), P(3, i + 1), P(2, i + 1), T(1, i, 0), T(1, i, 1),
           T(1, i + 1, 1), T(1, i + 1, 0));
    m.quad(P(0, i), P(2, i), P(2, i + 1), P(0, i + 1), T(2, i, 0), T(2, i, 1),
           T(2, i + 1, 1), T(2, i + 1, 0));  // bottom cap
    m.quad(P(1, i), P(1, i + 1), P(3, i + 1), P(3, i), T(3, i, 0), T(3, i + 1, 0),
           T(3, i + 1, 1), T(3, i, 1));  // top cap
  }
  return m;
}

// Sphere with a periodic radial bump field; the modulation vanishes at the
// poles and matches across the longitude seam.
ObjMesh pebble(double r, int rings, int segs) {
  ObjMesh m;
  const auto radius = [&](double theta, double phi) {
    const double bump = 0.18 * std::sin(3.0 * phi + 1.1) * std::sin(2.0 * theta) +
                        0.12 * std::cos(5.0 * phi - 0.7) * std::sin(theta) * std::sin(theta);
    return r * (1.0 + bump);
  };
  for (int i = 1; i < rings; ++i) {
    const double theta = kPi * i / rings;
    for (int j = 0; j < segs; ++j) {
      const double phi = 2.0 * kPi * j / segs;
      const double rr = radius(theta, phi);
      m.positions.emplace_back(rr * std::sin(theta) * std::cos(phi),
                               rr * std::sin(theta) * std::sin(phi), rr * std::cos(theta));
    }
  }
  m.positions.emplace_back(0.0, 0.0, r);   // north pole (theta 0)
  m.positions.emplace_back(0.0, 0.0, -r);  // south pole
  const int np = (rings - 1) * segs + 1, sp = np + 1;

  for (int i = 1; i < rings; ++i)
    for (int j = 0; j <= segs; ++j)
      m.uvs.emplace_back(static_cast<double>(j) / segs, static_cast<double>(i) / rings);
  for (int j = 0; j < segs; ++j) m.uvs.emplace_back((j + 0.5) / segs, 0.0);
  for (int j = 0; j < segs; ++j) m.uvs.emplace_back((j + 0.5) / segs, 1.0);
  const auto P = [&](int i, int j) { return (i - 1) * segs + (j % segs) + 1; };
  const auto T = [&](int i, int j) { return (i - 1) * (segs + 1) + j + 1; };
  const int tn = (rings - 1) * (segs + 1), ts = tn + segs;

  for (int j = 0; j < segs; ++j) {
    m.faces.push_back({{{np, tn + j + 1}, {P(1, j), T(1, j)}, {P(1, j + 1), T(1, j + 1)}}});
    m.faces.push_back(
        {{{sp, ts + j + 1}, {P(rings - 1, j + 1), T(rings - 1, j + 1)},
          {P(rings - 1, j), T(rings - 1, j)}}});
  }
  for (int i = 1; i + 1 < rings; ++i)
    for (int j = 0; j < segs; ++j)
      m.quad(P(i, j), P(i, j + 1), P(i + 1, j + 1), P(i + 1, j), T(i, j), T(i, j + 1),
             T(i + 1, j + 1), T(i + 1, j));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_assets <asset dir>\n");
    return 2;
  }
  const fs::path root = argv[1];
  fs::create_directories(root / "textures" / "synth");
  fs::create_directories(root / "textures" / "photo");
  fs::create_directories(root / "meshes");

  char name[64];
  for (int k = 0; k < 6; ++k) {
    std::snprintf(name, sizeof(name), "synth_%02d.png", k);
    write_png(root / "textures" / "synth" / name, synth_texture(0x53594e00u + k));
    std::snprintf(name, sizeof(name), "photo_%02d.png", k);
    write_png(root / "textures" / "photo" / name, photo_texture(0x50484f00u + k));
  }

  const std::vector<std::pair<std::string, ObjMesh>> meshes = {
      {"torus", torus(0.35, 0.15, 24, 16)},
      {"star_prism", star_prism(5, 0.5, 0.22, 0.3)},
      {"tube", tube(0.5, 0.32, 0.35, 20)},
      {"pebble", pebble(0.5, 12, 18)},
  };
  for (const auto& [mesh_name, mesh] : meshes) {
    const fs::path path = root / "meshes" / (mesh_name + ".obj");
    write_obj(path, mesh, mesh_name);
    load_obj(path);  // parse back through the strict loader as a self-check
  }
  std::printf("wrote assets under %s\n", root.string().c_str());
  return 0;
}
