// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include "semistereo/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "semistereo/pfm.hpp"
#include "semistereo/png_io.hpp"
#include "semistereo/rng.hpp"

namespace semistereo {
namespace {

std::string frame_stem(int frame) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06d", frame);
  return buf;
}

// Shortest decimal form that parses back to the same double.
std::string fmt_num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

FramePaths DatasetLayout::paths(int frame) const {
  FramePaths p;
  const std::string stem = frame_stem(frame);
  if (style == LayoutStyle::Middlebury) {
    const auto dir = root / ("frame_" + stem);
    p.left = dir / "im0.png";
    p.right = dir / "im1.png";
    p.disp_pfm = dir / "disp0.pfm";
    p.disp_png16 = dir / "disp0_16.png";
    p.occlusion = dir / "occ0.png";
    p.calib = dir / "calib.txt";
  } else {
    p.left = root / "image_2" / (stem + "_10.png");
    p.right = root / "image_3" / (stem + "_10.png");
    p.disp_pfm = root / "disp_pfm_0" / (stem + "_10.pfm");
    p.disp_png16 = root / "disp_occ_0" / (stem + "_10.png");
    p.occlusion = root / "occ_0" / (stem + "_10.png");
    p.calib = root / "calib" / (stem + ".txt");
  }
  return p;
}

void write_disparity_png16(const std::filesystem::path& path, const FloatMap& disp) {
  std::vector<std::uint16_t> enc(disp.data.size());
  for (std::size_t i = 0; i < disp.data.size(); ++i) {
    const double d = disp.data[i];
    if (!(d >= 0.0) || d >= 256.0)
      throw DisparityOverflowError("disparity " + std::to_string(d) +
                                   " does not fit the 16-bit encoding (needs [0, 256))");
    // 0 is reserved for "invalid"; exact zeros store as the smallest step.
    const long v = std::lround(d * 256.0);
    enc[i] = static_cast<std::uint16_t>(v == 0 ? 1 : v);
  }
  write_png16(path, enc, disp.width, disp.height);
}

FloatMap read_disparity_png16(const std::filesystem::path& path) {
  int w = 0, h = 0;
  const auto enc = read_png16(path, &w, &h);
  FloatMap disp(w, h);
  for (std::size_t i = 0; i < enc.size(); ++i)
    disp.data[i] = enc[i] == 0 ? 0.f : static_cast<float>(enc[i] / 256.0);
  return disp;
}

void write_calib(const std::filesystem::path& path, const StereoRig& rig) {
  rig.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string f = fmt_num(rig.f_px());
  const std::string cx = fmt_num(rig.width_px / 2.0);
  const std::string cy = fmt_num(rig.height_px / 2.0);
  const std::string cam = "[" + f + " 0 " + cx + "; 0 " + f + " " + cy + "; 0 0 1]";
  out << "cam0=" << cam << "\n";
  out << "cam1=" << cam << "\n";
  out << "doffs=0\n";
  out << "baseline=" << fmt_num(rig.baseline_m * 1000.0) << "\n";
  out << "width=" << rig.width_px << "\n";
  out << "height=" << rig.height_px << "\n";
  out << "ndisp=" << fmt_num(rig.ndisp) << "\n";
  if (!out) throw IoError("short write to " + path.string());
}

CalibInfo parse_calib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CalibInfo c;
  std::string line;
  int line_no = 0;
  bool have_cam = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    const auto num = [&](const std::string& s) {
      double v = 0.0;
      const char* b = s.data();
      const auto res = std::from_chars(b, b + s.size(), v);
      if (res.ec != std::errc())
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + s +
                         "'");
      return v;
    };
    if (key == "cam0" || key == "cam1") {
      double m[9];
      if (std::sscanf(val.c_str(), "[%lf %lf %lf; %lf %lf %lf; %lf %lf %lf]", &m[0], &m[1],
                      &m[2], &m[3], &m[4], &m[5], &m[6], &m[7], &m[8]) != 9)
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad camera matrix");
      if (key == "cam0") {
        c.f_px = m[0];
        c.cx = m[2];
        c.cy = m[5];
        have_cam = true;
      }
    } else if (key == "doffs") {
      c.doffs = num(val);
    } else if (key == "baseline") {
      c.baseline_m = num(val) / 1000.0;
    } else if (key == "width") {
      c.width = static_cast<int>(num(val));
    } else if (key == "height") {
      c.height = static_cast<int>(num(val));
    } else if (key == "ndisp") {
      c.ndisp = num(val);
    } else {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key +
                       "'");
    }
  }
  if (!have_cam || c.width <= 0 || c.height <= 0)
    throw ParseError(path.string() + ": incomplete calib file");
  return c;
}

void prepare_output_root(const DatasetLayout& layout, std::uint64_t config_hash,
                         std::uint64_t seed) {
  namespace fs = std::filesystem;
  const fs::path& root = layout.root;
  if (fs::exists(root)) {
    if (!fs::is_directory(root)) throw IoError(root.string() + " exists and is not a directory");
    if (!fs::is_empty(root)) {
      // Only resume over our own previous output for the same config + seed.
      nlohmann::json m;
      try {
        m = read_manifest(root);
      } catch (const Error&) {
        throw IoError(root.string() +
                      " is not empty and has no readable manifest; refusing to overwrite");
      }
      char hex[32];
      std::snprintf(hex, sizeof(hex), "%016llx",
                    static_cast<unsigned long long>(config_hash));
      if (m.value("config_hash", "") != hex ||
          m.value("seed", std::uint64_t{0}) != seed)
        throw IoError(root.string() +
                      " holds a dataset from a different config or seed; refusing to overwrite");
    }
  } else {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());
  }
  if (layout.style == LayoutStyle::Kitti) {
    for (const char* sub : {"image_2", "image_3", "disp_pfm_0", "disp_occ_0", "occ_0", "calib"})
      std::filesystem::create_directories(layout.root / sub);
  }
}

void write_frame(const DatasetLayout& layout, const FrameSample& sample,
                 const StereoRig& rig) {
  const FramePaths p = layout.paths(sample.frame);
  if (layout.style == LayoutStyle::Middlebury)
    std::filesystem::create_directories(p.left.parent_path());
  write_png(p.left, sample.left);
  write_png(p.right, sample.right);
  if (layout.with_pfm) write_pfm(p.disp_pfm, sample.disparity);
  if (layout.with_png16) write_disparity_png16(p.disp_png16, sample.disparity);
  if (layout.with_occlusion) {
    Image8 occ(sample.occlusion.width, sample.occlusion.height, 1);
    for (std::size_t i = 0; i < occ.data.size(); ++i)
      occ.data[i] = sample.occlusion.data[i] ? 255 : 0;
    write_png(p.occlusion, occ);
  }
  if (layout.with_calib) write_calib(p.calib, rig);
}

void write_manifest(const DatasetLayout& layout, const nlohmann::json& resolved_config,
                    std::uint64_t config_hash, std::uint64_t seed, int frames, double fps,
                    const StereoRig& rig) {
  nlohmann::json m;
  m["format"] = "semistereo-dataset";
  m["version"] = 1;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash));
  m["config_hash"] = hex;
  m["seed"] = seed;
  m["frames"] = frames;
  m["fps"] = fps;
  m["layout"] = layout.style == LayoutStyle::Middlebury ? "middlebury" : "kitti";
  m["outputs"] = {{"pfm", layout.with_pfm},
                  {"png16", layout.with_png16},
                  {"occlusion", layout.with_occlusion},
                  {"calib", layout.with_calib}};
  m["rig"] = {{"width", rig.width_px},   {"height", rig.height_px},
              {"f_px", rig.f_px()},      {"baseline_m", rig.baseline_m},
              {"z_near_m", rig.z_near_m}, {"ndisp", rig.ndisp}};
  m["config"] = resolved_config;
  nlohmann::json list = nlohmann::json::array();
  for (int i = 0; i < frames; ++i) {
    const FramePaths p = layout.paths(i);
    list.push_back(
        {{"index", i},
         {"seed", mix_seed(seed, static_cast<std::uint64_t>(i))},
         {"left", std::filesystem::relative(p.left, layout.root).generic_string()},
         {"right", std::filesystem::relative(p.right, layout.root).generic_string()},
         {"disparity",
          std::filesystem::relative(layout.with_pfm ? p.disp_pfm : p.disp_png16, layout.root)
              .generic_string()}});
  }
  m["frame_files"] = std::move(list);

  std::ofstream out(layout.root / "manifest.json");
  if (!out) throw IoError("cannot write manifest to " + layout.root.string());
  out << m.dump(2) << "\n";
  if (!out) throw IoError("short write to manifest in " + layout.root.string());
}

nlohmann::json read_manifest(const std::filesystem::path& root) {
  const auto path = root / "manifest.json";
  std::ifstream in(path);
  if (!in) throw ConfigError("no manifest at " + path.string());
  try {
    nlohmann::json m;
    in >> m;
    if (m.value("format", "") != "semistereo-dataset")
      throw ParseError(path.string() + ": not a dataset manifest");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

FrameSample read_pair(const DatasetLayout& layout, int frame) {
  const FramePaths p = layout.paths(frame);
  const auto require = [&](const std::filesystem::path& f) {
    if (!std::filesystem::exists(f))
      throw MissingOutputError("frame " + std::to_string(frame) + ": missing " + f.string());
  };
  require(p.left);
  require(p.right);
  FrameSample s;
  s.frame = frame;
  s.left = read_image(p.left);
  s.right = read_image(p.right);
  if (layout.with_pfm) {
    require(p.disp_pfm);
    s.disparity = read_pfm(p.disp_pfm);
  } else if (layout.with_png16) {
    require(p.disp_png16);
    s.disparity = read_disparity_png16(p.disp_png16);
  }
  if (layout.with_occlusion) {
    require(p.occlusion);
    const Image8 occ = read_image(p.occlusion);
    s.occlusion = Mask(occ.width, occ.height);
    for (int y = 0; y < occ.height; ++y)
      for (int x = 0; x < occ.width; ++x) s.occlusion.at(x, y) = occ.at(x, y, 0) ? 1 : 0;
  }
  return s;
}

}  // namespace semistereo
