// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/texture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "semistereo/errors.hpp"
#include "semistereo/png_io.hpp"

namespace semistereo {

void PatchSpec::validate() const {
  if (count <= 0) throw ValidationError("patch spec: count must be positive");
  if (!(side_frac_min > 0.0 && side_frac_min <= side_frac_max && side_frac_max <= 1.0))
    throw ValidationError("patch spec: need 0 < side_frac_min <= side_frac_max <= 1");
  if (out_side_px < 8) throw ValidationError("patch spec: out_side_px must be at least 8");
}

namespace {

// Weighted source span for one output texel of a box resample.
struct Span {
  int begin;
  std::vector<double> w;
};

std::vector<Span> make_spans(int in, int out) {
  std::vector<Span> spans(out);
  const double scale = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    const double a = i * scale, b = (i + 1) * scale;
    Span& s = spans[i];
    s.begin = static_cast<int>(std::floor(a));
    for (int t = s.begin; t < in && t < b; ++t) {
      const double w = std::min(b, t + 1.0) - std::max(a, static_cast<double>(t));
      if (w > 0.0) s.w.push_back(w / scale);
    }
    if (s.w.empty()) s.w.push_back(1.0);  // degenerate guard, should not happen
  }
  return spans;
}

std::uint8_t to_u8(double v) {
  const long r = std::lround(v);  // rounds half away from zero
  return static_cast<std::uint8_t>(std::clamp(r, 0l, 255l));
}

int wrap_index(int i, int n) {
  const int m = i % n;
  return m < 0 ? m + n : m;
}

}  // namespace

Image8 resample_area(const Image8& src, int x0, int y0, int side, int out_side) {
  if (side <= 0 || out_side <= 0 || x0 < 0 || y0 < 0 || x0 + side > src.width ||
      y0 + side > src.height)
    throw ValidationError("resample_area: crop outside source");
  const auto spans = make_spans(side, out_side);
  // Horizontal pass to out_side x side, then vertical pass.
  std::vector<double> tmp(static_cast<std::size_t>(out_side) * side * 3);
  for (int y = 0; y < side; ++y) {
    for (int o = 0; o < out_side; ++o) {
      const Span& s = spans[o];
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < s.w.size(); ++k) {
        const int sx = x0 + s.begin + static_cast<int>(k);
        for (int c = 0; c < 3; ++c) acc[c] += s.w[k] * src.at(sx, y0 + y, c);
      }
      double* t = &tmp[(static_cast<std::size_t>(y) * out_side + o) * 3];
      for (int c = 0; c < 3; ++c) t[c] = acc[c];
    }
  }
  Image8 out(out_side, out_side, 3);
  for (int o = 0; o < out_side; ++o) {
    const Span& s = spans[o];
    for (int x = 0; x < out_side; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < s.w.size(); ++k) {
        const double* t = &tmp[((s.begin + k) * static_cast<std::size_t>(out_side) + x) * 3];
        for (int c = 0; c < 3; ++c) acc[c] += s.w[k] * t[c];
      }
      for (int c = 0; c < 3; ++c) out.at(x, o, c) = to_u8(acc[c]);
    }
  }
  return out;
}

PatchSequence extract_patches(const std::vector<SourceImage>& sources,
                              const PatchSpec& spec, RandomStream& rng) {
  spec.validate();
  if (sources.empty()) throw NoTexturesError("extract_patches: no source images");
  for (const auto& s : sources) {
    if (s.pixels.channels != 3)
      throw ValidationError("extract_patches: source '" + s.origin_id + "' is not RGB");
    if (std::min(s.pixels.width, s.pixels.height) < 8)
      throw ImageTooSmallError("extract_patches: source '" + s.origin_id +
                               "' is smaller than the 8 px minimum crop");
  }

  PatchSequence seq;
  seq.side_px = spec.out_side_px;
  seq.patches.reserve(spec.count);
  seq.provenance.reserve(spec.count);
  for (int k = 0; k < spec.count; ++k) {
    const auto idx = rng.uniform_index(sources.size());
    const SourceImage& src = sources[idx];
    const int minwh = std::min(src.pixels.width, src.pixels.height);
    const double frac = rng.uniform(spec.side_frac_min, spec.side_frac_max);
    const int side = std::clamp(static_cast<int>(std::llround(frac * minwh)), 8, minwh);
    const int x = static_cast<int>(rng.uniform_index(src.pixels.width - side + 1));
    const int y = static_cast<int>(rng.uniform_index(src.pixels.height - side + 1));
    seq.patches.push_back(resample_area(src.pixels, x, y, side, spec.out_side_px));
    seq.provenance.push_back({src.origin_id, {x, y, side}});
  }
  return seq;
}

Scene assign_textures(Scene scene, const PatchSequence& patches, RandomStream& rng) {
  if (patches.count() == 0) throw NoTexturesError("assign_textures: empty patch sequence");
  for (auto& obj : scene.objects)
    obj.patch = static_cast<int>(rng.uniform_index(patches.count()));
  return scene;
}

double compute_uv_scale(const Eigen::Vector3d& scaled_bbox_size, double patch_side_px,
                        double depth_m, const StereoRig& rig) {
  if (!(patch_side_px > 0.0) || !(depth_m > 0.0))
    throw ValidationError("compute_uv_scale: patch side and depth must be positive");
  const Eigen::Vector3d& s = scaled_bbox_size;
  if (!(s.maxCoeff() > 0.0))
    throw ValidationError("compute_uv_scale: degenerate bounding box");
  // Longer edge of the largest-area bounding box face.
  const double faces[3][2] = {{s.x(), s.y()}, {s.y(), s.z()}, {s.x(), s.z()}};
  double best_area = -1.0, longer_edge = 0.0;
  for (const auto& f : faces) {
    const double area = f[0] * f[1];
    if (area > best_area) {
      best_area = area;
      longer_edge = std::max(f[0], f[1]);
    }
  }
  const double extent_px = rig.f_px() * longer_edge / depth_m;
  const double raw = extent_px / patch_side_px;
  if (!(raw > 0.0) || !std::isfinite(raw))
    throw ValidationError("compute_uv_scale: non-finite tiling factor");
  const double snapped = std::exp2(std::floor(std::log2(raw)));
  return std::clamp(snapped, 0.25, 64.0);
}

std::array<std::uint8_t, 3> sample_texture(const Image8& patch, double u, double v,
                                           Filter filter) {
  if (patch.channels != 3 || patch.empty())
    throw ValidationError("sample_texture: patch must be non-empty RGB");
  const int w = patch.width, h = patch.height;
  const double uw = u - std::floor(u);
  const double vw = v - std::floor(v);
  std::array<std::uint8_t, 3> out;
  if (filter == Filter::Nearest) {
    const int x = std::min(static_cast<int>(uw * w), w - 1);
    const int y = std::min(static_cast<int>(vw * h), h - 1);
    for (int c = 0; c < 3; ++c) out[c] = patch.at(x, y, c);
    return out;
  }
  // Texel centers at (i + 0.5) / side; neighbors wrap around.
  const double x = uw * w - 0.5, y = vw * h - 0.5;
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0, fy = y - y0;
  const int ix0 = wrap_index(x0, w), ix1 = wrap_index(x0 + 1, w);
  const int iy0 = wrap_index(y0, h), iy1 = wrap_index(y0 + 1, h);
  for (int c = 0; c < 3; ++c) {
    const double v00 = patch.at(ix0, iy0, c), v10 = patch.at(ix1, iy0, c);
    const double v01 = patch.at(ix0, iy1, c), v11 = patch.at(ix1, iy1, c);
    const double val = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
                       fy * ((1.0 - fx) * v01 + fx * v11);
    out[c] = to_u8(val);
  }
  return out;
}

void save_patch_strip(const PatchSequence& seq, const std::filesystem::path& png_path,
                      const std::filesystem::path& index_path) {
  if (seq.count() == 0) throw ValidationError("save_patch_strip: empty sequence");
  const int s = seq.side_px;
  Image8 strip(s, s * seq.count(), 3);
  for (int k = 0; k < seq.count(); ++k)
    std::copy(seq.patches[k].data.begin(), seq.patches[k].data.end(),
              strip.data.begin() + static_cast<std::size_t>(k) * s * s * 3);
  write_png(png_path, strip);

  nlohmann::json idx;
  idx["side_px"] = s;
  idx["patches"] = nlohmann::json::array();
  for (const auto& p : seq.provenance)
    idx["patches"].push_back({{"origin", p.origin_id},
                              {"x", p.rect.x},
                              {"y", p.rect.y},
                              {"side", p.rect.side}});
  std::ofstream out(index_path);
  if (!out) throw IoError("cannot write " + index_path.string());
  out << idx.dump(2) << "\n";
}

PatchSequence load_patch_strip(const std::filesystem::path& png_path,
                               const std::filesystem::path& index_path) {
  std::ifstream in(index_path);
  if (!in) throw IoError("cannot open " + index_path.string());
  nlohmann::json idx;
  try {
    in >> idx;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(index_path.string() + ": " + e.what());
  }
  PatchSequence seq;
  seq.side_px = idx.at("side_px").get<int>();
  const Image8 strip = read_image(png_path);
  const int n = static_cast<int>(idx.at("patches").size());
  if (strip.width != seq.side_px || strip.height != seq.side_px * n)
    throw ParseError(png_path.string() + ": strip does not match its index");
  for (int k = 0; k < n; ++k) {
    Image8 p(seq.side_px, seq.side_px, 3);
    const auto begin =
        strip.data.begin() + static_cast<std::size_t>(k) * seq.side_px * seq.side_px * 3;
    std::copy(begin, begin + p.data.size(), p.data.begin());
    seq.patches.push_back(std::move(p));
    const auto& e = idx.at("patches")[k];
    seq.provenance.push_back({e.at("origin").get<std::string>(),
                              {e.at("x").get<int>(), e.at("y").get<int>(),
                               e.at("side").get<int>()}});
  }
  return seq;
}

}  // namespace semistereo
